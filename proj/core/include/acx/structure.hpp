#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "acx/linalg.hpp"
#include "acx/polyfield.hpp"

namespace acx {

inline constexpr double kTolAlgSymbolic = 1e-10;
inline constexpr double kTolAlgFiniteDiff = 1e-6;

// Pointwise access to an almost complex structure and its first partials.
class Structure {
 public:
  virtual ~Structure() = default;
  virtual int dim_n() const = 0;
  virtual Eigen::MatrixXd value(const Point& p) const = 0;
  virtual Eigen::MatrixXd partial(const Point& p, int a) const = 0;
  virtual bool exact() const = 0;

  double tol_alg() const { return exact() ? kTolAlgSymbolic : kTolAlgFiniteDiff; }
  // sum_a v^a dJ/dx^a
  Eigen::MatrixXd directional(const Point& p, const Eigen::VectorXd& v) const;
};

class StructureField final : public Structure {
 public:
  StructureField() = default;
  explicit StructureField(PolyField j, double domain_radius = 1.0);
  static StructureField standard(int n, double domain_radius = 1.0);

  int dim_n() const override { return field_.dim_n(); }
  Eigen::MatrixXd value(const Point& p) const override { return field_.eval_real(p); }
  Eigen::MatrixXd partial(const Point& p, int a) const override { return partials_.at(a).eval_real(p); }
  bool exact() const override { return true; }

  const PolyField& field() const { return field_; }
  const PolyField& partial_field(int a) const { return partials_.at(a); }
  double domain_radius() const { return radius_; }

 private:
  PolyField field_;
  std::vector<PolyField> partials_;
  double radius_ = 1.0;
};

// escape hatch for non-polynomial structures; partials by central differences
class CallableStructure final : public Structure {
 public:
  CallableStructure(int n, MatrixFn j, double step = 1e-5) : n_(n), fn_(std::move(j)), step_(step) {}

  int dim_n() const override { return n_; }
  Eigen::MatrixXd value(const Point& p) const override { return fn_(p); }
  Eigen::MatrixXd partial(const Point& p, int a) const override { return fd_partial(fn_, p, a, step_); }
  bool exact() const override { return false; }

 private:
  int n_;
  MatrixFn fn_;
  double step_;
};

struct TangentVector {
  Point base;
  Eigen::VectorXd components;

  Eigen::VectorXcd complexified() const { return to_complex(components); }
  static TangentVector from_complex(const Point& base, const Eigen::VectorXcd& v) {
    return {base, acx::from_complex(v)};
  }
};

struct CheckResult {
  double residual = 0.0;
  bool pass = false;
};

CheckResult structure_check(const Structure& j, const std::vector<Point>& points);

// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] with constant extensions of X, Y
Eigen::VectorXd nijenhuis(const Structure& j, const Point& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
Eigen::VectorXd nijenhuis(const Structure& j, const TangentVector& x, const TangentVector& y);

struct TypeParts {
  Eigen::VectorXcd holomorphic;      // (1,0)
  Eigen::VectorXcd antiholomorphic;  // (0,1)
};
TypeParts type_project(const Structure& j, const Point& p, const Eigen::VectorXcd& x);

struct CovectorParts {
  Eigen::RowVectorXcd holomorphic;      // d_J u
  Eigen::RowVectorXcd antiholomorphic;  // dbar_J u
};
CovectorParts dbar(const Structure& j, const PolyField& u, const Point& p);
CovectorParts type_split_covector(const Eigen::MatrixXd& j, const Eigen::RowVectorXcd& w);

// A with (1,0)-forms dz + A dzbar; holomorphy reads dbar f + A conj(d f) = 0
Eigen::MatrixXcd coefficient_from_structure(const Eigen::MatrixXd& j);
Eigen::MatrixXd structure_from_coefficient(const Eigen::MatrixXcd& a);

}  // namespace acx
