#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acx/polyfield.hpp"
#include "acx/structure.hpp"

namespace acx {

class DefiningFunction {
 public:
  DefiningFunction() = default;
  explicit DefiningFunction(PolyField rho, double gradient_floor = 1e-8);

  int dim_n() const { return rho_.dim_n(); }
  const PolyField& field() const { return rho_; }
  double gradient_floor() const { return floor_; }

  double value(const Point& p) const { return rho_.eval_real_scalar(p); }
  Eigen::VectorXd gradient(const Point& p) const;
  Eigen::MatrixXd hessian(const Point& p) const;

 private:
  PolyField rho_;
  std::vector<PolyField> grad_;
  std::vector<PolyField> hess_;  // row-major 2n x 2n
  double floor_ = 1e-8;
};

// real basis (2n x (2n-2)) of {v : dr(v) = dr(Jv) = 0}
Eigen::MatrixXd holomorphic_tangent(const DefiningFunction& r, const Structure& j, const Point& p);

// symmetric S with levi_form(X) = X^T S X
Eigen::MatrixXd levi_matrix(const DefiningFunction& r, const Structure& j, const Point& p);
double levi_form(const DefiningFunction& r, const Structure& j, const Point& p, const Eigen::VectorXd& x);
// smallest eigenvalue of the Levi form restricted to span(basis) (orthonormalized)
double levi_min_on(const DefiningFunction& r, const Structure& j, const Point& p, const Eigen::MatrixXd& basis);

enum class PshClass { StrictlyPsh, Psh, Neither };
std::string to_string(PshClass c);

struct PshResult {
  PshClass cls = PshClass::Neither;
  double margin = 0.0;  // min of L(X)/|X|^2 over samples
};
PshResult classify_psh(const DefiningFunction& r, const Structure& j, const std::vector<Point>& points,
                       const std::vector<Eigen::VectorXd>& directions, double tol = 1e-10);

struct Frame {
  Point base;
  int pivot = 0;               // complex index playing the normal role
  Eigen::MatrixXcd vectors;    // 2n x n: X^1..X^{n-1} tangential, X^n last
  Eigen::MatrixXcd forms;      // n x 2n duals
  double duality_error = 0.0;
};
Frame boundary_frame(const DefiningFunction& rho, const Structure& j, const Point& p);

}  // namespace acx
