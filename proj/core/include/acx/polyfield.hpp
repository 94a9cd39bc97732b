#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace acx {

using Complex = std::complex<double>;
using Point = Eigen::VectorXd;  // real coordinates (x1, y1, ..., xn, yn)

// exponents of (z1..zn, zbar1..zbarn)
using Exponent = std::vector<int>;

// Matrix-valued polynomial in (z, zbar) on R^{2n}.
class PolyField {
 public:
  PolyField() = default;
  PolyField(int n, int rows, int cols);

  static PolyField zero(int n, int rows = 1, int cols = 1) { return PolyField(n, rows, cols); }
  static PolyField constant(int n, const Eigen::MatrixXcd& value);
  static PolyField scalar(int n, Complex c);
  static PolyField z(int n, int j);
  static PolyField zbar(int n, int j);
  static PolyField x(int n, int j);  // Re z^j
  static PolyField y(int n, int j);  // Im z^j
  // real coordinate a (x^{a/2} if a even, y^{a/2} if odd)
  static PolyField coordinate(int n, int a);
  static PolyField monomial(int n, const Exponent& e, Complex c = 1.0);

  int dim_n() const { return n_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }
  int max_degree() const;
  const std::map<Exponent, Eigen::MatrixXcd>& terms() const { return terms_; }

  void add_term(const Exponent& e, const Eigen::MatrixXcd& c);
  void add_term(const Exponent& e, Complex c);

  Eigen::MatrixXcd eval(const Point& p) const;
  Complex eval_scalar(const Point& p) const;
  Eigen::MatrixXd eval_real(const Point& p) const;
  double eval_real_scalar(const Point& p) const;

  PolyField d_z(int j) const;
  PolyField d_zbar(int j) const;
  PolyField d_real(int a) const;  // d/dx^{a/2} or d/dy^{a/2}

  PolyField conj() const;
  PolyField transpose() const;
  PolyField entry(int r, int c) const;
  PolyField block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const PolyField& f);

  // substitute z^j := zmap[j] (scalar fields over a common dimension)
  PolyField compose(const std::vector<PolyField>& zmap) const;

  PolyField homogeneous_part(int degree) const;
  PolyField truncated(int max_total_degree) const;
  // keep terms whose exponent passes the predicate
  template <class Pred>
  PolyField filtered(Pred keep) const {
    PolyField out(n_, rows_, cols_);
    for (const auto& [e, c] : terms_)
      if (keep(e)) out.terms_.emplace(e, c);
    return out;
  }

  bool is_real(double tol = 0.0) const;
  double max_coefficient() const;
  PolyField pruned(double tol = 0.0) const;

  PolyField operator-() const;
  PolyField& operator+=(const PolyField& o);
  PolyField& operator-=(const PolyField& o);
  PolyField& operator*=(Complex s);

  friend PolyField operator+(PolyField a, const PolyField& b) { return a += b; }
  friend PolyField operator-(PolyField a, const PolyField& b) { return a -= b; }
  friend PolyField operator*(PolyField a, Complex s) { return a *= s; }
  friend PolyField operator*(Complex s, PolyField a) { return a *= s; }
  friend PolyField operator*(const PolyField& a, const PolyField& b);
  friend PolyField operator*(const Eigen::MatrixXcd& m, const PolyField& a);
  friend PolyField operator*(const PolyField& a, const Eigen::MatrixXcd& m);

  nlohmann::json to_json() const;
  static PolyField from_json(const nlohmann::json& j);

 private:
  void check_dim(int n) const;
  int n_ = 0;
  int rows_ = 1;
  int cols_ = 1;
  std::map<Exponent, Eigen::MatrixXcd> terms_;
};

}  // namespace acx
