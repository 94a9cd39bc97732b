#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "acx/polyfield.hpp"

namespace acx {

// block-diagonal standard structure, each block maps d/dx to d/dy
Eigen::MatrixXd standard_structure(int n);

Eigen::VectorXcd to_complex(const Eigen::VectorXd& v);
Eigen::VectorXd from_complex(const Eigen::VectorXcd& v);

// covectors and vectors in the complexified real basis
Eigen::RowVectorXcd dz_covector(int n, int j);
Eigen::RowVectorXcd dzbar_covector(int n, int j);
Eigen::VectorXcd d_dz_vector(int n, int j);
Eigen::VectorXcd d_dzbar_vector(int n, int j);

// real-linear M on C^n written as v -> P v + R conj(v)
struct RealLinearSplit {
  Eigen::MatrixXcd linear;
  Eigen::MatrixXcd antilinear;
};
RealLinearSplit split_real_linear(const Eigen::MatrixXd& m);
Eigen::MatrixXd real_matrix(const Eigen::MatrixXcd& linear, const Eigen::MatrixXcd& antilinear);

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol);
// orthonormal basis of the kernel
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rel_tol = 1e-12);
// orthonormal basis of the column span
Eigen::MatrixXd orth(const Eigen::MatrixXd& m, double rel_tol = 1e-12);

using MatrixFn = std::function<Eigen::MatrixXd(const Point&)>;
using VectorFn = std::function<Eigen::VectorXd(const Point&)>;

// fourth-order central differences
Eigen::MatrixXd fd_partial(const MatrixFn& f, const Point& p, int a, double h = 1e-5);
Eigen::MatrixXd fd_jacobian(const VectorFn& f, const Point& p, double h = 1e-5);
Eigen::VectorXd fd_gradient(const std::function<double(const Point&)>& f, const Point& p, double h = 1e-5);

// least-squares slope and intercept of log(y) against log(x); nonpositive y are skipped
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  int used = 0;
};
LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

// real 2n-vector map given by complex polynomial components z -> F(z)
struct PolyMap {
  std::vector<PolyField> components;

  int dim_n() const { return static_cast<int>(components.size()); }
  Eigen::VectorXd eval(const Point& p) const;
  Eigen::MatrixXd jacobian(const Point& p) const;
  static PolyMap identity(int n);
};

// generic smooth map of R^{2n} with a Jacobian
struct SmoothMap {
  VectorFn value;
  MatrixFn jacobian;

  static SmoothMap from_poly(const PolyMap& f);
  static SmoothMap from_callable(VectorFn f, double h = 1e-5);
  static SmoothMap linear(const Eigen::MatrixXd& c);
};

}  // namespace acx
