#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "acx/polyfield.hpp"

namespace acx {

// Halton sequence in [0,1)^dim; the seed shifts the start index
class Halton {
 public:
  explicit Halton(int dim, std::uint64_t seed = 0);
  Eigen::VectorXd next();

 private:
  int dim_;
  std::uint64_t index_;
};

// quasi-random points in the closed ball of the given radius
std::vector<Point> ball_points(int dim, int count, double radius, std::uint64_t seed = 0);
// seeded Gaussian directions normalized to unit length
std::vector<Eigen::VectorXd> unit_directions(int dim, int count, std::uint64_t seed = 0);

// deterministic engine shared by fixtures and tests
using Rng = std::mt19937_64;
Eigen::VectorXd gaussian_vector(int dim, Rng& rng);
double uniform(Rng& rng, double lo, double hi);

}  // namespace acx
