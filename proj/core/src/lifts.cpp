#include "acx/lifts.hpp"

#include <cmath>

#include "acx/errors.hpp"

namespace acx {

Eigen::VectorXd LiftedPoint::stacked() const {
  Eigen::VectorXd s(base.size() + fiber.size());
  s << base, fiber;
  return s;
}

LiftedPoint LiftedPoint::split(const Eigen::VectorXd& stacked) {
  const Eigen::Index m = stacked.size() / 2;
  return {stacked.head(m), stacked.tail(m)};
}

namespace {
void check_lifted(const Structure& j, const LiftedPoint& lp) {
  require(lp.base.size() == 2 * j.dim_n() && lp.fiber.size() == 2 * j.dim_n(), ErrorCode::DimensionMismatch,
          "lifted point dimensions do not match the structure");
}
}  // namespace

Eigen::MatrixXd complete_lift(const Structure& j, const LiftedPoint& lp) {
  check_lifted(j, lp);
  const int m = 2 * j.dim_n();
  const Eigen::MatrixXd jp = j.value(lp.base);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = jp;
  out.bottomRightCorner(m, m) = jp;
  out.bottomLeftCorner(m, m) = j.directional(lp.base, lp.fiber);
  return out;
}

Eigen::MatrixXd cotangent_derivative_block(const Structure& j, const LiftedPoint& lp) {
  check_lifted(j, lp);
  const int m = 2 * j.dim_n();
  // pd(i, d) = p_a dJ^a_i / dx^d
  Eigen::MatrixXd pd(m, m);
  for (int d = 0; d < m; ++d) pd.col(d) = (lp.fiber.transpose() * j.partial(lp.base, d)).transpose();
  return pd - pd.transpose();
}

Eigen::MatrixXd gamma_nj(const Structure& j, const LiftedPoint& lp) {
  check_lifted(j, lp);
  const int m = 2 * j.dim_n();
  const Eigen::MatrixXd jp = j.value(lp.base);
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd jei = jp.col(i);
    for (int c = 0; c < m; ++c) {
      Eigen::VectorXd ec = Eigen::VectorXd::Unit(m, c);
      g(i, c) = lp.fiber.dot(nijenhuis(j, lp.base, ec, jei));
    }
  }
  return g;
}

Eigen::MatrixXd cotangent_structure(const Structure& j, const LiftedPoint& lp) {
  check_lifted(j, lp);
  const int m = 2 * j.dim_n();
  const Eigen::MatrixXd jp = j.value(lp.base);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = jp;
  out.bottomRightCorner(m, m) = jp.transpose();
  out.bottomLeftCorner(m, m) = cotangent_derivative_block(j, lp) + 0.5 * gamma_nj(j, lp);
  return out;
}

ConormalElement conormal_frame(const DefiningFunction& rho, const Structure& j, const Point& x, double c) {
  require(c != 0.0, ErrorCode::ZeroSection, "conormal scale c must be nonzero");
  const Eigen::VectorXd g = rho.gradient(x);
  require(g.norm() >= rho.gradient_floor(), ErrorCode::DegenerateGradient, "d rho vanishes at the base point");
  return {x, c * g.transpose() * j.value(x), c};
}

Eigen::MatrixXd conormal_tangent_basis(const DefiningFunction& rho, const Structure& j, const Point& x, double c) {
  const ConormalElement e = conormal_frame(rho, j, x, c);
  const int m = 2 * rho.dim_n();
  const Eigen::VectorXd g = rho.gradient(x);
  const Eigen::MatrixXd h = rho.hessian(x);
  const Eigen::MatrixXd jp = j.value(x);
  // dtheta(b, a) = d theta_b / dx^a for theta = g^T J
  Eigen::MatrixXd dtheta = (h * jp).transpose();
  for (int a = 0; a < m; ++a) dtheta.col(a) += (g.transpose() * j.partial(x, a)).transpose();

  Eigen::MatrixXd gr(1, m);
  gr.row(0) = g.transpose();
  const Eigen::MatrixXd tg = null_space(gr);  // T Gamma, 2n-1 columns
  Eigen::MatrixXd basis(2 * m, m);
  for (Eigen::Index k = 0; k < tg.cols(); ++k) {
    basis.col(k).head(m) = tg.col(k);
    basis.col(k).tail(m) = c * dtheta * tg.col(k);
  }
  basis.col(m - 1).head(m).setZero();
  basis.col(m - 1).tail(m) = e.covector.transpose() / c;
  return basis;
}

Eigen::MatrixXd tangent_bundle_basis(const Eigen::MatrixXd& subspace_basis) {
  const Eigen::Index m = subspace_basis.rows(), k = subspace_basis.cols();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * m, 2 * k);
  b.topLeftCorner(m, k) = subspace_basis;
  b.bottomRightCorner(m, k) = subspace_basis;
  return b;
}

int totally_real_defect(const Eigen::MatrixXd& tangent_basis, const Eigen::MatrixXd& structure, double rank_tol) {
  const int k = static_cast<int>(tangent_basis.cols());
  require(structure.rows() == tangent_basis.rows(), ErrorCode::DimensionMismatch, "structure and basis sizes differ");
  require(numeric_rank(tangent_basis, rank_tol) == k, ErrorCode::RankDeficientInput, "tangent basis is not independent");
  Eigen::MatrixXd both(tangent_basis.rows(), 2 * k);
  both << tangent_basis, structure * tangent_basis;
  return 2 * k - numeric_rank(both, rank_tol);
}

LiftedPoint cotangent_lift_map(const SmoothMap& f, const LiftedPoint& lp) {
  const Eigen::MatrixXd df = f.jacobian(lp.base);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(df.transpose());
  require(lu.isInvertible(), ErrorCode::SingularJacobian, "df is singular at the base point");
  return {f.value(lp.base), lu.solve(lp.fiber)};
}

}  // namespace acx
