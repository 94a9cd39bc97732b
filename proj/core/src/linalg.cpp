#include "acx/linalg.hpp"

#include <cmath>

#include "acx/errors.hpp"

namespace acx {

Eigen::MatrixXd standard_structure(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return j;
}

Eigen::VectorXcd to_complex(const Eigen::VectorXd& v) {
  require(v.size() % 2 == 0, ErrorCode::DimensionMismatch, "real vector must have even length");
  Eigen::VectorXcd c(v.size() / 2);
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] = Complex(v[2 * k], v[2 * k + 1]);
  return c;
}

Eigen::VectorXd from_complex(const Eigen::VectorXcd& v) {
  Eigen::VectorXd r(2 * v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    r[2 * k] = v[k].real();
    r[2 * k + 1] = v[k].imag();
  }
  return r;
}

Eigen::RowVectorXcd dz_covector(int n, int j) {
  Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Zero(2 * n);
  w[2 * j] = 1.0;
  w[2 * j + 1] = Complex(0.0, 1.0);
  return w;
}

Eigen::RowVectorXcd dzbar_covector(int n, int j) {
  Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Zero(2 * n);
  w[2 * j] = 1.0;
  w[2 * j + 1] = Complex(0.0, -1.0);
  return w;
}

Eigen::VectorXcd d_dz_vector(int n, int j) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  v[2 * j] = 0.5;
  v[2 * j + 1] = Complex(0.0, -0.5);
  return v;
}

Eigen::VectorXcd d_dzbar_vector(int n, int j) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  v[2 * j] = 0.5;
  v[2 * j + 1] = Complex(0.0, 0.5);
  return v;
}

RealLinearSplit split_real_linear(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols() && m.rows() % 2 == 0, ErrorCode::DimensionMismatch, "need a square even matrix");
  const int n = static_cast<int>(m.rows() / 2);
  RealLinearSplit s{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
  const Complex I(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXcd me = to_complex(m.col(2 * k));      // M(e_k)
    const Eigen::VectorXcd mie = to_complex(m.col(2 * k + 1));  // M(i e_k)
    s.linear.col(k) = 0.5 * (me - I * mie);
    s.antilinear.col(k) = 0.5 * (me + I * mie);
  }
  return s;
}

Eigen::MatrixXd real_matrix(const Eigen::MatrixXcd& linear, const Eigen::MatrixXcd& antilinear) {
  const int n = static_cast<int>(linear.rows());
  Eigen::MatrixXd m(2 * n, 2 * n);
  const Complex I(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    m.col(2 * k) = from_complex(linear.col(k) + antilinear.col(k));
    m.col(2 * k + 1) = from_complex(I * linear.col(k) - I * antilinear.col(k));
  }
  return m;
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[k] > rel_tol * s[0]) ++r;
  return r;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[0] > 0.0 && s[k] > rel_tol * s[0]) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Eigen::MatrixXd orth(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[0] > 0.0 && s[k] > rel_tol * s[0]) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd fd_partial(const MatrixFn& f, const Point& p, int a, double h) {
  Point q = p;
  auto at = [&](double t) {
    q[a] = p[a] + t;
    return f(q);
  };
  Eigen::MatrixXd d = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
  return d;
}

Eigen::MatrixXd fd_jacobian(const VectorFn& f, const Point& p, double h) {
  const Eigen::VectorXd f0 = f(p);
  Eigen::MatrixXd jac(f0.size(), p.size());
  MatrixFn g = [&](const Point& x) -> Eigen::MatrixXd { return f(x); };
  for (Eigen::Index a = 0; a < p.size(); ++a) jac.col(a) = fd_partial(g, p, static_cast<int>(a), h).col(0);
  return jac;
}

Eigen::VectorXd fd_gradient(const std::function<double(const Point&)>& f, const Point& p, double h) {
  MatrixFn g = [&](const Point& x) { return Eigen::MatrixXd::Constant(1, 1, f(x)); };
  Eigen::VectorXd grad(p.size());
  for (Eigen::Index a = 0; a < p.size(); ++a) grad[a] = fd_partial(g, p, static_cast<int>(a), h)(0, 0);
  return grad;
}

LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorCode::DimensionMismatch, "fit series lengths differ");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t k = 0; k < x.size(); ++k) {
    if (!(y[k] > 0.0) || !(x[k] > 0.0)) continue;
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++m;
  }
  LogLogFit fit;
  fit.used = m;
  if (m < 2) {
    fit.slope = std::nan("");
    fit.intercept = std::nan("");
    return fit;
  }
  const double den = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

Eigen::VectorXd PolyMap::eval(const Point& p) const {
  Eigen::VectorXcd v(components.size());
  for (size_t j = 0; j < components.size(); ++j) v[j] = components[j].eval_scalar(p);
  return from_complex(v);
}

Eigen::MatrixXd PolyMap::jacobian(const Point& p) const {
  const int n = dim_n();
  Eigen::MatrixXd jac(2 * n, p.size());
  for (int j = 0; j < n; ++j) {
    for (Eigen::Index a = 0; a < p.size(); ++a) {
      const Complex d = components[j].d_real(static_cast<int>(a)).eval_scalar(p);
      jac(2 * j, a) = d.real();
      jac(2 * j + 1, a) = d.imag();
    }
  }
  return jac;
}

PolyMap PolyMap::identity(int n) {
  PolyMap f;
  for (int j = 0; j < n; ++j) f.components.push_back(PolyField::z(n, j));
  return f;
}

SmoothMap SmoothMap::from_poly(const PolyMap& f) {
  return SmoothMap{[f](const Point& p) { return f.eval(p); }, [f](const Point& p) { return f.jacobian(p); }};
}

SmoothMap SmoothMap::from_callable(VectorFn f, double h) {
  return SmoothMap{f, [f, h](const Point& p) { return fd_jacobian(f, p, h); }};
}

SmoothMap SmoothMap::linear(const Eigen::MatrixXd& c) {
  return SmoothMap{[c](const Point& p) -> Eigen::VectorXd { return c * p; },
                   [c](const Point&) -> Eigen::MatrixXd { return c; }};
}

}  // namespace acx
