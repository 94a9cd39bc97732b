#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "acx/levi.hpp"
#include "acx/linalg.hpp"
#include "acx/model.hpp"
#include "acx/structure.hpp"

namespace acx {

// f(origin + linv * w) as a polynomial in w
PolyField substitute_affine(const PolyField& f, const Eigen::MatrixXd& linv, const Point& origin);
// push J forward by w = l (x - origin)
StructureField pushforward_affine(const StructureField& j, const Eigen::MatrixXd& l, const Point& origin);

// real basis change putting a constant complex structure into J_st form: l j l^{-1} = J_st
Eigen::MatrixXd canonical_basis_change(const Eigen::MatrixXd& j);

struct ChartNormalization {
  Eigen::MatrixXd linear;  // z = linear (x - origin) / lambda
  Point origin;
  double lambda = 1.0;
  double residual = 0.0;   // |Jhat(0) - J_st|
  double c2_deviation = 0.0;
  StructureField pushed;
};
ChartNormalization normalize_chart(const StructureField& j, const Point& p, double lambda = 1.0,
                                   int samples = 200, std::uint64_t seed = 0);

// sup over points of value + first + second derivative sup-norms of (J - ref)
double c2_distance(const StructureField& j, const Eigen::MatrixXd& ref, const std::vector<Point>& points);
// same for scalar fields
double c2_distance(const PolyField& a, const PolyField& b, const std::vector<Point>& points);

struct AdaptedCoordinates {
  Point q;
  int pivot = 0;
  Eigen::MatrixXcd alpha;     // complex linear part acting on z - q (after pivot reordering)
  Eigen::MatrixXd real_linear;
  double jet_residual = 0.0;  // |grad(rho o alpha^{-1})(0) - 2 e_{x^n}|
};
AdaptedCoordinates boundary_adapted(const DefiningFunction& rho, const Point& q);

// alpha followed by a linear map restoring J(0) = J_st while keeping rho = 2 Re z^n + O(2)
struct BoundaryChart {
  AdaptedCoordinates adapted;
  Eigen::MatrixXd linear;     // full real map acting on x - q
  StructureField j;
  DefiningFunction rho;
  double structure_residual = 0.0;
  double jet_residual = 0.0;

  Eigen::VectorXd to_chart(const Point& x) const { return linear * (x - adapted.q); }
  Eigen::VectorXd from_chart(const Point& w) const;
};
BoundaryChart normalize_boundary_chart(const DefiningFunction& rho, const StructureField& j, const Point& q);

struct DilationParams {
  double delta = 1.0;
  static constexpr double tangential_exponent = 0.5;
  static constexpr double normal_exponent = 1.0;
};
Eigen::VectorXd dilation_scales(int n, const DilationParams& d);
StructureField dilate_structure(const StructureField& j, const DilationParams& d);
PolyField dilate_rho(const PolyField& rho, const DilationParams& d);

struct LimitModel {
  ModelStructureSpec j0;
  ModelDomainSpec sigma;
  PolyField rho_hat;          // 2 Re z^n + tangential quadratic part
  double levi_margin = 0.0;   // min tangential Levi eigenvalue at 0
};
LimitModel limit_model(const DefiningFunction& rho, const StructureField& j);

struct ScalingReport {
  std::vector<double> deltas;
  std::vector<double> structure_dist;
  std::vector<double> rho_dist;
  double structure_rate = 0.0;
  double rho_rate = 0.0;
  double levi_invariance = 0.0;
  LimitModel model;
};
std::vector<double> default_deltas();
ScalingReport scaling_sequence(const DefiningFunction& rho, const StructureField& j, const std::vector<double>& deltas,
                               std::uint64_t seed = 0, int samples = 500);

struct BlockOrders {
  std::vector<double> dists;
  std::vector<double> tt, tn, nt, nn;  // block norms: A_{j,l}, A_{j,n}, A_{n,l}, A_{n,n}
  std::vector<double> im_nn;
  std::vector<double> distance_ratio;  // dist(f(p), bD') / dist(p, bD)
  double exponents[4] = {0, 0, 0, 0};   // NaN when the block vanishes identically
};
// project onto {rho = 0} along the gradient
Point project_to_boundary(const DefiningFunction& rho, const Point& p);
BlockOrders tangent_block_orders(const SmoothMap& f, const DefiningFunction& rho, const StructureField& j,
                                 const DefiningFunction& rho_target, const StructureField& j_target,
                                 const std::vector<Point>& points);

}  // namespace acx
