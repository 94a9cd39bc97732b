#include "acx/levi.hpp"

#include <cmath>
#include <limits>

#include "acx/errors.hpp"
#include "acx/linalg.hpp"

namespace acx {

namespace {
const Complex kI(0.0, 1.0);

void check_gradient(const DefiningFunction& r, const Eigen::VectorXd& g) {
  require(g.norm() >= r.gradient_floor(), ErrorCode::DegenerateGradient,
          "|d rho| = " + std::to_string(g.norm()) + " below floor");
}
}  // namespace

DefiningFunction::DefiningFunction(PolyField rho, double gradient_floor) : rho_(std::move(rho)), floor_(gradient_floor) {
  require(rho_.is_scalar(), ErrorCode::DimensionMismatch, "defining function must be scalar");
  require(rho_.is_real(1e-12 * std::max(1.0, rho_.max_coefficient())), ErrorCode::InvalidSpec,
          "defining function must be real-valued");
  const int m = 2 * rho_.dim_n();
  for (int a = 0; a < m; ++a) grad_.push_back(rho_.d_real(a));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) hess_.push_back(b < a ? hess_[b * m + a] : grad_[a].d_real(b));
}

Eigen::VectorXd DefiningFunction::gradient(const Point& p) const {
  require(p.size() == 2 * dim_n(), ErrorCode::DimensionMismatch, "point dimension");
  Eigen::VectorXd g(grad_.size());
  for (size_t a = 0; a < grad_.size(); ++a) g[a] = grad_[a].eval_real_scalar(p);
  return g;
}

Eigen::MatrixXd DefiningFunction::hessian(const Point& p) const {
  const int m = 2 * dim_n();
  Eigen::MatrixXd h(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) h(a, b) = h(b, a) = hess_[a * m + b].eval_real_scalar(p);
  return h;
}

Eigen::MatrixXd holomorphic_tangent(const DefiningFunction& r, const Structure& j, const Point& p) {
  const Eigen::VectorXd g = r.gradient(p);
  check_gradient(r, g);
  Eigen::MatrixXd eqs(2, g.size());
  eqs.row(0) = g.transpose();
  eqs.row(1) = g.transpose() * j.value(p);
  return null_space(eqs);
}

Eigen::MatrixXd levi_matrix(const DefiningFunction& r, const Structure& j, const Point& p) {
  const int m = 2 * r.dim_n();
  const Eigen::VectorXd g = r.gradient(p);
  const Eigen::MatrixXd h = r.hessian(p);
  const Eigen::MatrixXd jp = j.value(p);
  // dtheta(a, b) = d_a theta_b with theta = J^* dr
  Eigen::MatrixXd dtheta = h * jp;
  for (int a = 0; a < m; ++a) dtheta.row(a) += g.transpose() * j.partial(p, a);
  const Eigen::MatrixXd w = dtheta - dtheta.transpose();
  const Eigen::MatrixXd wj = w * jp;
  return -0.5 * (wj + wj.transpose());
}

double levi_form(const DefiningFunction& r, const Structure& j, const Point& p, const Eigen::VectorXd& x) {
  return x.dot(levi_matrix(r, j, p) * x);
}

double levi_min_on(const DefiningFunction& r, const Structure& j, const Point& p, const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd q = orth(basis);
  const Eigen::MatrixXd s = q.transpose() * levi_matrix(r, j, p) * q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  return es.eigenvalues()[0];
}

std::string to_string(PshClass c) {
  switch (c) {
    case PshClass::StrictlyPsh: return "strictly_psh";
    case PshClass::Psh: return "psh";
    case PshClass::Neither: return "neither";
  }
  return "neither";
}

PshResult classify_psh(const DefiningFunction& r, const Structure& j, const std::vector<Point>& points,
                       const std::vector<Eigen::VectorXd>& directions, double tol) {
  PshResult res;
  res.margin = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const Eigen::MatrixXd s = levi_matrix(r, j, p);
    for (const auto& d : directions) res.margin = std::min(res.margin, d.dot(s * d) / d.squaredNorm());
  }
  if (res.margin > tol) {
    res.cls = PshClass::StrictlyPsh;
  } else if (res.margin >= -tol) {
    res.cls = PshClass::Psh;
  } else {
    res.cls = PshClass::Neither;
  }
  return res;
}

Frame boundary_frame(const DefiningFunction& rho, const Structure& j, const Point& p) {
  const int n = rho.dim_n();
  const Eigen::VectorXd g = rho.gradient(p);
  check_gradient(rho, g);
  const Eigen::MatrixXd jp = j.value(p);
  const Eigen::RowVectorXd theta = g.transpose() * jp;

  Frame f;
  f.base = p;
  f.pivot = n - 1;
  if (std::abs(g[2 * n - 2]) < 0.1 * g.norm()) {
    Eigen::Index a = 0;
    g.cwiseAbs().maxCoeff(&a);
    f.pivot = static_cast<int>(a / 2);
  }
  const int m = f.pivot;
  const int xm = 2 * m, ym = 2 * m + 1;

  Eigen::Matrix2d sys;
  sys << g[xm], g[ym], theta[xm], theta[ym];
  Eigen::FullPivLU<Eigen::Matrix2d> lu(sys);
  require(lu.isInvertible() && std::abs(sys.determinant()) > 1e-14 * g.squaredNorm(), ErrorCode::FrameDegeneracy,
          "pivot block of d rho and d rho o J is singular");

  f.vectors.resize(2 * n, n);
  int col = 0;
  auto put = [&](const Eigen::VectorXd& v) {
    f.vectors.col(col++) = v.cast<Complex>() - kI * (jp * v).cast<Complex>();
  };
  for (int k = 0; k < n; ++k) {
    if (k == m) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
    v[2 * k] = 1.0;
    const Eigen::Vector2d ab = lu.solve(Eigen::Vector2d(-g[2 * k], -theta[2 * k]));
    v[xm] = ab[0];
    v[ym] = ab[1];
    put(v);
  }
  Eigen::VectorXd vn = Eigen::VectorXd::Zero(2 * n);
  vn[ym] = g[xm];
  vn[xm] = -g[ym];
  put(vn);

  Eigen::MatrixXcd z(2 * n, 2 * n);
  z << f.vectors, f.vectors.conjugate();
  Eigen::FullPivLU<Eigen::MatrixXcd> zlu(z);
  require(zlu.isInvertible(), ErrorCode::FrameDegeneracy, "frame vectors are dependent");
  f.forms = zlu.inverse().topRows(n);
  f.duality_error = (f.forms * f.vectors - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  return f;
}

}  // namespace acx
