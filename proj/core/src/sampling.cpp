#include "acx/sampling.hpp"

#include <cmath>

#include "acx/errors.hpp"

namespace acx {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

// Box-Muller; normal_distribution streams differ between standard libraries
double gauss_from(double u1, double u2) {
  u1 = std::max(u1, 1e-300);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

Halton::Halton(int dim, std::uint64_t seed) : dim_(dim), index_(1 + 409 * seed) {
  require(dim >= 1 && dim <= 16, ErrorCode::DimensionMismatch, "Halton dimension must be in [1,16]");
}

Eigen::VectorXd Halton::next() {
  Eigen::VectorXd v(dim_);
  for (int k = 0; k < dim_; ++k) v[k] = radical_inverse(index_, kPrimes[k]);
  ++index_;
  return v;
}

std::vector<Point> ball_points(int dim, int count, double radius, std::uint64_t seed) {
  // rejection from the cube keeps low discrepancy inside the ball
  Halton h(dim, seed);
  std::vector<Point> pts;
  pts.reserve(count);
  while (static_cast<int>(pts.size()) < count) {
    Eigen::VectorXd u = 2.0 * h.next() - Eigen::VectorXd::Ones(dim);
    if (u.squaredNorm() <= 1.0) pts.push_back(radius * u);
  }
  return pts;
}

std::vector<Eigen::VectorXd> unit_directions(int dim, int count, std::uint64_t seed) {
  Rng rng(seed + 0x9e3779b97f4a7c15ULL);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd v = gaussian_vector(dim, rng);
    const double nv = v.norm();
    if (nv > 1e-12) out.push_back(v / nv);
  }
  return out;
}

Eigen::VectorXd gaussian_vector(int dim, Rng& rng) {
  Eigen::VectorXd v(dim);
  for (int k = 0; k < dim; ++k) {
    const double u1 = std::generate_canonical<double, 53>(rng);
    const double u2 = std::generate_canonical<double, 53>(rng);
    v[k] = gauss_from(u1, u2);
  }
  return v;
}

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
}

}  // namespace acx
