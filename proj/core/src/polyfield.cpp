#include "acx/polyfield.hpp"

#include <algorithm>
#include <cmath>

#include "acx/errors.hpp"

namespace acx {

namespace {

Exponent unit_exponent(int n, int slot) {
  Exponent e(2 * n, 0);
  e[slot] = 1;
  return e;
}

Eigen::MatrixXcd json_to_matrix(const nlohmann::json& re, const nlohmann::json& im, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  if (re.is_number()) {
    require(rows == 1 && cols == 1, ErrorCode::InvalidSpec, "scalar coefficient for non-scalar shape");
    m(0, 0) = Complex(re.get<double>(), im.is_null() ? 0.0 : im.get<double>());
    return m;
  }
  require(re.is_array() && re.size() == static_cast<size_t>(rows), ErrorCode::InvalidSpec,
          "coefficient rows do not match shape");
  for (int r = 0; r < rows; ++r) {
    require(re[r].is_array() && re[r].size() == static_cast<size_t>(cols), ErrorCode::InvalidSpec,
            "coefficient cols do not match shape");
    for (int c = 0; c < cols; ++c) {
      double imv = im.is_null() ? 0.0 : im[r][c].get<double>();
      m(r, c) = Complex(re[r][c].get<double>(), imv);
    }
  }
  return m;
}

}  // namespace

PolyField::PolyField(int n, int rows, int cols) : n_(n), rows_(rows), cols_(cols) {
  require(n >= 1, ErrorCode::DimensionMismatch, "complex dimension must be positive");
  require(rows >= 1 && cols >= 1, ErrorCode::DimensionMismatch, "field shape must be positive");
}

PolyField PolyField::constant(int n, const Eigen::MatrixXcd& value) {
  PolyField f(n, static_cast<int>(value.rows()), static_cast<int>(value.cols()));
  f.add_term(Exponent(2 * n, 0), value);
  return f;
}

PolyField PolyField::scalar(int n, Complex c) {
  PolyField f(n, 1, 1);
  f.add_term(Exponent(2 * n, 0), c);
  return f;
}

PolyField PolyField::z(int n, int j) { return monomial(n, unit_exponent(n, j)); }
PolyField PolyField::zbar(int n, int j) { return monomial(n, unit_exponent(n, n + j)); }

PolyField PolyField::x(int n, int j) { return (z(n, j) + zbar(n, j)) * Complex(0.5, 0.0); }
PolyField PolyField::y(int n, int j) { return (z(n, j) - zbar(n, j)) * Complex(0.0, -0.5); }

PolyField PolyField::coordinate(int n, int a) { return (a % 2 == 0) ? x(n, a / 2) : y(n, a / 2); }

PolyField PolyField::monomial(int n, const Exponent& e, Complex c) {
  require(static_cast<int>(e.size()) == 2 * n, ErrorCode::DimensionMismatch, "exponent length must be 2n");
  PolyField f(n, 1, 1);
  f.add_term(e, c);
  return f;
}

int PolyField::max_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

void PolyField::add_term(const Exponent& e, const Eigen::MatrixXcd& c) {
  require(static_cast<int>(e.size()) == 2 * n_, ErrorCode::DimensionMismatch, "exponent length must be 2n");
  require(c.rows() == rows_ && c.cols() == cols_, ErrorCode::DimensionMismatch, "coefficient shape mismatch");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
  }
}

void PolyField::add_term(const Exponent& e, Complex c) {
  add_term(e, Eigen::MatrixXcd::Constant(rows_, cols_, c));
}

void PolyField::check_dim(int n) const {
  require(n == n_, ErrorCode::DimensionMismatch, "fields live on different dimensions");
}

Eigen::MatrixXcd PolyField::eval(const Point& p) const {
  require(p.size() == 2 * n_, ErrorCode::DimensionMismatch,
          "point has dimension " + std::to_string(p.size()) + ", expected " + std::to_string(2 * n_));
  const int deg = max_degree();
  // pw[slot][k] = (z or zbar)^k
  std::vector<std::vector<Complex>> pw(2 * n_, std::vector<Complex>(deg + 1, 1.0));
  for (int j = 0; j < n_; ++j) {
    const Complex zj(p[2 * j], p[2 * j + 1]);
    for (int k = 1; k <= deg; ++k) {
      pw[j][k] = pw[j][k - 1] * zj;
      pw[n_ + j][k] = pw[n_ + j][k - 1] * std::conj(zj);
    }
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows_, cols_);
  for (const auto& [e, c] : terms_) {
    Complex m = 1.0;
    for (int s = 0; s < 2 * n_; ++s)
      if (e[s]) m *= pw[s][e[s]];
    out += m * c;
  }
  return out;
}

Complex PolyField::eval_scalar(const Point& p) const {
  require(is_scalar(), ErrorCode::DimensionMismatch, "eval_scalar on a matrix field");
  return eval(p)(0, 0);
}

Eigen::MatrixXd PolyField::eval_real(const Point& p) const { return eval(p).real(); }

double PolyField::eval_real_scalar(const Point& p) const { return eval_scalar(p).real(); }

PolyField PolyField::d_z(int j) const {
  require(j >= 0 && j < n_, ErrorCode::DimensionMismatch, "derivative index out of range");
  PolyField out(n_, rows_, cols_);
  for (const auto& [e, c] : terms_) {
    if (e[j] == 0) continue;
    Exponent f = e;
    f[j] -= 1;
    out.add_term(f, c * static_cast<double>(e[j]));
  }
  return out;
}

PolyField PolyField::d_zbar(int j) const {
  require(j >= 0 && j < n_, ErrorCode::DimensionMismatch, "derivative index out of range");
  PolyField out(n_, rows_, cols_);
  for (const auto& [e, c] : terms_) {
    if (e[n_ + j] == 0) continue;
    Exponent f = e;
    f[n_ + j] -= 1;
    out.add_term(f, c * static_cast<double>(e[n_ + j]));
  }
  return out;
}

PolyField PolyField::d_real(int a) const {
  require(a >= 0 && a < 2 * n_, ErrorCode::DimensionMismatch, "real derivative index out of range");
  const int j = a / 2;
  if (a % 2 == 0) return d_z(j) + d_zbar(j);
  return (d_z(j) - d_zbar(j)) * Complex(0.0, 1.0);
}

PolyField PolyField::conj() const {
  PolyField out(n_, rows_, cols_);
  for (const auto& [e, c] : terms_) {
    Exponent f(2 * n_);
    for (int j = 0; j < n_; ++j) {
      f[j] = e[n_ + j];
      f[n_ + j] = e[j];
    }
    out.add_term(f, c.conjugate());
  }
  return out;
}

PolyField PolyField::transpose() const {
  PolyField out(n_, cols_, rows_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.transpose());
  return out;
}

PolyField PolyField::entry(int r, int c) const { return block(r, c, 1, 1); }

PolyField PolyField::block(int r0, int c0, int nr, int nc) const {
  require(r0 >= 0 && c0 >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_, ErrorCode::DimensionMismatch,
          "block out of range");
  PolyField out(n_, nr, nc);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.block(r0, c0, nr, nc));
  return out;
}

void PolyField::set_block(int r0, int c0, const PolyField& f) {
  check_dim(f.n_);
  require(r0 >= 0 && c0 >= 0 && r0 + f.rows_ <= rows_ && c0 + f.cols_ <= cols_, ErrorCode::DimensionMismatch,
          "block out of range");
  for (auto& [e, c] : terms_) c.block(r0, c0, f.rows_, f.cols_).setZero();
  for (const auto& [e, c] : f.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) it = terms_.emplace(e, Eigen::MatrixXcd::Zero(rows_, cols_)).first;
    it->second.block(r0, c0, f.rows_, f.cols_) = c;
  }
}

PolyField PolyField::compose(const std::vector<PolyField>& zmap) const {
  require(static_cast<int>(zmap.size()) == n_, ErrorCode::DimensionMismatch, "composition needs n components");
  const int m = zmap.front().dim_n();
  for (const auto& g : zmap)
    require(g.is_scalar() && g.dim_n() == m, ErrorCode::DimensionMismatch, "composition components must be scalar");

  const int deg = max_degree();
  // cached powers of each substituted variable and of its conjugate
  std::vector<std::vector<PolyField>> pw(2 * n_);
  for (int j = 0; j < n_; ++j) {
    const PolyField gz = zmap[j];
    const PolyField gzb = zmap[j].conj();
    pw[j].push_back(scalar(m, 1.0));
    pw[n_ + j].push_back(scalar(m, 1.0));
    for (int k = 1; k <= deg; ++k) {
      pw[j].push_back(pw[j].back() * gz);
      pw[n_ + j].push_back(pw[n_ + j].back() * gzb);
    }
  }

  PolyField out(m, rows_, cols_);
  for (const auto& [e, c] : terms_) {
    PolyField mono = scalar(m, 1.0);
    for (int s = 0; s < 2 * n_; ++s)
      if (e[s]) mono = mono * pw[s][e[s]];
    for (const auto& [f, s] : mono.terms_) out.add_term(f, s(0, 0) * c);
  }
  return out;
}

PolyField PolyField::homogeneous_part(int degree) const {
  return filtered([degree](const Exponent& e) {
    int s = 0;
    for (int k : e) s += k;
    return s == degree;
  });
}

PolyField PolyField::truncated(int max_total_degree) const {
  return filtered([max_total_degree](const Exponent& e) {
    int s = 0;
    for (int k : e) s += k;
    return s <= max_total_degree;
  });
}

bool PolyField::is_real(double tol) const {
  const PolyField diff = *this - conj();
  return diff.max_coefficient() <= tol;
}

double PolyField::max_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

PolyField PolyField::pruned(double tol) const {
  PolyField out(n_, rows_, cols_);
  for (const auto& [e, c] : terms_)
    if (c.cwiseAbs().maxCoeff() > tol) out.terms_.emplace(e, c);
  return out;
}

PolyField PolyField::operator-() const {
  PolyField out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

PolyField& PolyField::operator+=(const PolyField& o) {
  if (n_ == 0) return *this = o;
  if (o.n_ == 0) return *this;
  check_dim(o.n_);
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch, "shape mismatch in sum");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

PolyField& PolyField::operator-=(const PolyField& o) { return *this += -o; }

PolyField& PolyField::operator*=(Complex s) {
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

PolyField operator*(const PolyField& a, const PolyField& b) {
  a.check_dim(b.n_);
  int rows = 0, cols = 0;
  enum { Mat, LeftScalar, RightScalar } mode;
  if (a.is_scalar() && !b.is_scalar()) {
    mode = LeftScalar, rows = b.rows_, cols = b.cols_;
  } else if (b.is_scalar() && !a.is_scalar()) {
    mode = RightScalar, rows = a.rows_, cols = a.cols_;
  } else {
    require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch, "shape mismatch in product");
    mode = Mat, rows = a.rows_, cols = b.cols_;
  }
  PolyField out(a.n_, rows, cols);
  Exponent e(2 * a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t s = 0; s < e.size(); ++s) e[s] = ea[s] + eb[s];
      switch (mode) {
        case LeftScalar: out.add_term(e, ca(0, 0) * cb); break;
        case RightScalar: out.add_term(e, ca * cb(0, 0)); break;
        case Mat: out.add_term(e, ca * cb); break;
      }
    }
  }
  return out;
}

PolyField operator*(const Eigen::MatrixXcd& m, const PolyField& a) {
  require(m.cols() == a.rows_, ErrorCode::DimensionMismatch, "shape mismatch in product");
  PolyField out(a.n_, static_cast<int>(m.rows()), a.cols_);
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, m * c);
  return out;
}

PolyField operator*(const PolyField& a, const Eigen::MatrixXcd& m) {
  require(a.cols_ == m.rows(), ErrorCode::DimensionMismatch, "shape mismatch in product");
  PolyField out(a.n_, a.rows_, static_cast<int>(m.cols()));
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, c * m);
  return out;
}

nlohmann::json PolyField::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["shape"] = {rows_, cols_};
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) {
    nlohmann::json t;
    t["deg_z"] = std::vector<int>(e.begin(), e.begin() + n_);
    t["deg_zbar"] = std::vector<int>(e.begin() + n_, e.end());
    if (is_scalar()) {
      t["re"] = c(0, 0).real();
      t["im"] = c(0, 0).imag();
    } else {
      nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
      for (int r = 0; r < rows_; ++r) {
        std::vector<double> rr(cols_), ii(cols_);
        for (int k = 0; k < cols_; ++k) rr[k] = c(r, k).real(), ii[k] = c(r, k).imag();
        re.push_back(rr);
        im.push_back(ii);
      }
      t["re"] = re;
      t["im"] = im;
    }
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

PolyField PolyField::from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCode::InvalidSpec, "field: expected an object");
  require(j.contains("n") && j["n"].is_number_integer(), ErrorCode::InvalidSpec, "field: missing integer 'n'");
  const int n = j["n"].get<int>();
  int rows = 1, cols = 1;
  if (j.contains("shape")) {
    require(j["shape"].is_array() && j["shape"].size() == 2, ErrorCode::InvalidSpec, "field: 'shape' must be [rows, cols]");
    rows = j["shape"][0].get<int>();
    cols = j["shape"][1].get<int>();
  }
  PolyField f(n, rows, cols);
  if (!j.contains("terms")) return f;
  require(j["terms"].is_array(), ErrorCode::InvalidSpec, "field: 'terms' must be an array");
  size_t idx = 0;
  for (const auto& t : j["terms"]) {
    const std::string where = "field: terms[" + std::to_string(idx++) + "]";
    require(t.contains("deg_z") && t.contains("deg_zbar") && t.contains("re"), ErrorCode::InvalidSpec,
            where + " needs deg_z, deg_zbar, re");
    auto dz = t["deg_z"].get<std::vector<int>>();
    auto dzb = t["deg_zbar"].get<std::vector<int>>();
    require(static_cast<int>(dz.size()) == n && static_cast<int>(dzb.size()) == n, ErrorCode::InvalidSpec,
            where + " degree lists must have length n");
    Exponent e(dz);
    e.insert(e.end(), dzb.begin(), dzb.end());
    for (int k : e) require(k >= 0, ErrorCode::InvalidSpec, where + " negative degree");
    f.add_term(e, json_to_matrix(t["re"], t.contains("im") ? t["im"] : nlohmann::json(), rows, cols));
  }
  return f;
}

}  // namespace acx
