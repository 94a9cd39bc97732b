#include "acx/structure.hpp"

#include <cmath>

#include "acx/errors.hpp"

namespace acx {

namespace {
const Complex kI(0.0, 1.0);

void check_point(const Structure& j, const Point& p) {
  require(p.size() == 2 * j.dim_n(), ErrorCode::DimensionMismatch,
          "point has dimension " + std::to_string(p.size()) + ", structure expects " + std::to_string(2 * j.dim_n()));
}
}  // namespace

Eigen::MatrixXd Structure::directional(const Point& p, const Eigen::VectorXd& v) const {
  const int m = 2 * dim_n();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (int a = 0; a < m; ++a)
    if (v[a] != 0.0) d += v[a] * partial(p, a);
  return d;
}

StructureField::StructureField(PolyField j, double domain_radius) : field_(std::move(j)), radius_(domain_radius) {
  const int n = field_.dim_n();
  require(field_.rows() == 2 * n && field_.cols() == 2 * n, ErrorCode::DimensionMismatch,
          "structure field must be 2n x 2n");
  require(domain_radius > 0.0, ErrorCode::InvalidSpec, "domain radius must be positive");
  partials_.reserve(2 * n);
  for (int a = 0; a < 2 * n; ++a) partials_.push_back(field_.d_real(a));
}

StructureField StructureField::standard(int n, double domain_radius) {
  return StructureField(PolyField::constant(n, standard_structure(n).cast<Complex>()), domain_radius);
}

CheckResult structure_check(const Structure& j, const std::vector<Point>& points) {
  CheckResult r;
  const int m = 2 * j.dim_n();
  for (const auto& p : points) {
    check_point(j, p);
    const Eigen::MatrixXd v = j.value(p);
    r.residual = std::max(r.residual, (v * v + Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
  }
  r.pass = r.residual <= j.tol_alg();
  return r;
}

Eigen::VectorXd nijenhuis(const Structure& j, const Point& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  check_point(j, p);
  const Eigen::MatrixXd jp = j.value(p);
  const Eigen::VectorXd jx = jp * x, jy = jp * y;
  // brackets of constant extensions reduce to directional derivatives of J
  return j.directional(p, jx) * y - j.directional(p, jy) * x + jp * (j.directional(p, y) * x) -
         jp * (j.directional(p, x) * y);
}

Eigen::VectorXd nijenhuis(const Structure& j, const TangentVector& x, const TangentVector& y) {
  require((x.base - y.base).norm() == 0.0, ErrorCode::DimensionMismatch, "tangent vectors at different points");
  return nijenhuis(j, x.base, x.components, y.components);
}

TypeParts type_project(const Structure& j, const Point& p, const Eigen::VectorXcd& x) {
  check_point(j, p);
  const Eigen::MatrixXcd jp = j.value(p).cast<Complex>();
  const Eigen::VectorXcd jx = jp * x;
  return {0.5 * (x - kI * jx), 0.5 * (x + kI * jx)};
}

CovectorParts type_split_covector(const Eigen::MatrixXd& j, const Eigen::RowVectorXcd& w) {
  const Eigen::RowVectorXcd wj = w * j.cast<Complex>();
  return {0.5 * (w - kI * wj), 0.5 * (w + kI * wj)};
}

CovectorParts dbar(const Structure& j, const PolyField& u, const Point& p) {
  check_point(j, p);
  require(u.is_scalar() && u.dim_n() == j.dim_n(), ErrorCode::DimensionMismatch, "dbar needs a scalar field on the same space");
  Eigen::RowVectorXcd du(2 * j.dim_n());
  for (int a = 0; a < 2 * j.dim_n(); ++a) du[a] = u.d_real(a).eval_scalar(p);
  return type_split_covector(j.value(p), du);
}

Eigen::MatrixXcd coefficient_from_structure(const Eigen::MatrixXd& j) {
  const int n = static_cast<int>(j.rows() / 2);
  Eigen::MatrixXcd pz(n, n), pzb(n, n);
  for (int r = 0; r < n; ++r) {
    const Eigen::RowVectorXcd w = type_split_covector(j, dz_covector(n, r)).holomorphic;
    for (int k = 0; k < n; ++k) {
      const Complex cx = w[2 * k], cy = w[2 * k + 1];
      pz(r, k) = 0.5 * (cx - kI * cy);
      pzb(r, k) = 0.5 * (cx + kI * cy);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(pz);
  require(lu.isInvertible(), ErrorCode::Singular, "dz-part of the (1,0)-projection is singular");
  return lu.solve(pzb);
}

Eigen::MatrixXd structure_from_coefficient(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXcd c(2 * n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const Complex dz = (r == k) ? 1.0 : 0.0, dzb = a(r, k);
      c(r, 2 * k) = dz + dzb;
      c(r, 2 * k + 1) = kI * (dz - dzb);
    }
  }
  c.bottomRows(n) = c.topRows(n).conjugate();
  Eigen::VectorXcd d(2 * n);
  d.head(n).setConstant(kI);
  d.tail(n).setConstant(-kI);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(c);
  require(lu.isInvertible(), ErrorCode::Singular, "coefficient does not define a structure (|A| too large)");
  return lu.solve(d.asDiagonal() * c).real();
}

}  // namespace acx
