#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "acx/discs.hpp"
#include "acx/polyfield.hpp"
#include "acx/structure.hpp"

namespace acx {

// Coordinates flattening a totally real graph {x + i h(x)} to R^n and making the
// coefficient A vanish on R^n: first the shear (x, y) -> (x, y - h(x)), then
// z* = x + i Bhat(x, y) y with Bhat the order-(k-1) Taylor polynomial in y of B.
class ChirkaNormalization {
 public:
  ChirkaNormalization(std::vector<PolyField> h, std::shared_ptr<const Structure> j, int order);

  int dim_n() const { return n_; }
  int order() const { return order_; }

  // sheared structure and its coefficient data
  Eigen::MatrixXd sheared_structure(const Point& p) const;
  Eigen::MatrixXcd b_matrix(const Point& p) const;       // (I + A)^{-1} (I - A)
  Eigen::MatrixXcd b_extension(const Point& p) const;    // Bhat

  Eigen::VectorXd psi(const Point& p) const;             // sheared -> normalized
  Eigen::MatrixXd psi_jacobian(const Point& p) const;
  Eigen::VectorXd psi_inverse(const Point& w) const;

  Eigen::MatrixXd structure(const Point& w) const;       // normalized coordinates
  Eigen::MatrixXcd coefficient(const Point& w) const;
  // A(scale * w): an isotropic dilation keeps dz + A dzbar in the same form and shrinks dA
  CoefficientField coefficient_field(double scale, double radius = 1.0, int samples = 24) const;

 private:
  int n_;
  int order_;
  std::vector<PolyField> h_;
  std::vector<PolyField> dh_;  // dh^j/dx^k at index j * n + k, as fields on R^{2n}
  std::shared_ptr<const Structure> j_;
  double taylor_step_ = 1e-2;
};

ChirkaNormalization chirka_normalize(const std::vector<PolyField>& h, std::shared_ptr<const Structure> j, int order);

}  // namespace acx
