#pragma once

#include <Eigen/Dense>

#include "acx/levi.hpp"
#include "acx/linalg.hpp"
#include "acx/structure.hpp"

namespace acx {

// base point with a tangent fiber t or a cotangent fiber p (dual coordinates)
struct LiftedPoint {
  Point base;
  Eigen::VectorXd fiber;

  Eigen::VectorXd stacked() const;
  static LiftedPoint split(const Eigen::VectorXd& stacked);
};

struct ConormalElement {
  Point base;
  Eigen::RowVectorXd covector;
  double scale = 1.0;
};

// [[J, 0], [t^a dJ/dx^a, J]]
Eigen::MatrixXd complete_lift(const Structure& j, const LiftedPoint& lp);

// lower-left block p_a (dJ^a_i/dx^j - dJ^a_j/dx^i), row i, column j
Eigen::MatrixXd cotangent_derivative_block(const Structure& j, const LiftedPoint& lp);
// gamma(NJ) block: row i, column j holds p_a N^a(e_j, J e_i)
Eigen::MatrixXd gamma_nj(const Structure& j, const LiftedPoint& lp);
// Jhat + gamma(NJ)/2 with lower-right block J^T
Eigen::MatrixXd cotangent_structure(const Structure& j, const LiftedPoint& lp);

ConormalElement conormal_frame(const DefiningFunction& rho, const Structure& j, const Point& x, double c);
// 4n x 2n tangent basis of N_2 at (x, c J^* d rho)
Eigen::MatrixXd conormal_tangent_basis(const DefiningFunction& rho, const Structure& j, const Point& x, double c);
// tangent basis of TN inside TM for a linear subspace N with basis columns
Eigen::MatrixXd tangent_bundle_basis(const Eigen::MatrixXd& subspace_basis);

inline constexpr double kRankTol = 1e-8;
int totally_real_defect(const Eigen::MatrixXd& tangent_basis, const Eigen::MatrixXd& structure,
                        double rank_tol = kRankTol);

// (f(x), df(x)^{-T} p)
LiftedPoint cotangent_lift_map(const SmoothMap& f, const LiftedPoint& lp);

}  // namespace acx
