#include "acx/chirka.hpp"

#include <cmath>
#include <limits>

#include "acx/errors.hpp"
#include "acx/lifts.hpp"

namespace acx {

namespace {

Point x_only(const Point& p) {
  Point q = p;
  for (Eigen::Index k = 1; k < q.size(); k += 2) q[k] = 0.0;
  return q;
}

}  // namespace

ChirkaNormalization::ChirkaNormalization(std::vector<PolyField> h, std::shared_ptr<const Structure> j, int order)
    : n_(j ? j->dim_n() : 0), order_(order), h_(std::move(h)), j_(std::move(j)) {
  require(j_ != nullptr, ErrorCode::InvalidSpec, "structure is required");
  require(static_cast<int>(h_.size()) == n_, ErrorCode::DimensionMismatch, "graph needs n component functions");
  require(order_ >= 1 && order_ <= 4, ErrorCode::InvalidSpec, "flattening order must lie in 1..4");
  for (const auto& f : h_) {
    require(f.dim_n() == n_ && f.is_scalar() && f.is_real(1e-14), ErrorCode::InvalidSpec,
            "graph components must be real scalar fields");
  }
  for (int r = 0; r < n_; ++r)
    for (int k = 0; k < n_; ++k) dh_.push_back(h_[r].d_real(2 * k));

  const Point zero = Point::Zero(2 * n_);
  for (const auto& d : dh_)
    require(std::abs(d.eval_real_scalar(zero)) <= 1e-12, ErrorCode::InvalidSpec, "graph must satisfy dh(0) = 0");
  require((j_->value(zero) - standard_structure(n_)).cwiseAbs().maxCoeff() <= 1e-9, ErrorCode::InvalidSpec,
          "structure must equal J_st at the origin");

  // the graph must stay totally real near the origin
  std::vector<Point> probes{zero};
  for (int k = 0; k < n_; ++k)
    for (double s : {-0.25, 0.25}) probes.push_back(s * Eigen::VectorXd::Unit(2 * n_, 2 * k));
  for (const auto& x : probes) {
    Eigen::MatrixXd tangent = Eigen::MatrixXd::Zero(2 * n_, n_);
    Point on_graph = x;
    for (int r = 0; r < n_; ++r) on_graph[2 * r + 1] = h_[r].eval_real_scalar(x);
    for (int k = 0; k < n_; ++k) {
      tangent(2 * k, k) = 1.0;
      for (int r = 0; r < n_; ++r) tangent(2 * r + 1, k) = dh_[r * n_ + k].eval_real_scalar(x);
    }
    Eigen::MatrixXd both(2 * n_, 2 * n_);
    both << tangent, j_->value(on_graph) * tangent;
    require(numeric_rank(both, 1e-10) == 2 * n_, ErrorCode::NotTotallyReal, "graph is not totally real");
  }
}

Eigen::MatrixXd ChirkaNormalization::sheared_structure(const Point& p) const {
  const Point x = x_only(p);
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(2 * n_, 2 * n_), dinv = d;
  Point back = p;
  for (int r = 0; r < n_; ++r) {
    back[2 * r + 1] += h_[r].eval_real_scalar(x);
    for (int k = 0; k < n_; ++k) {
      const double s = dh_[r * n_ + k].eval_real_scalar(x);
      d(2 * r + 1, 2 * k) = -s;
      dinv(2 * r + 1, 2 * k) = s;
    }
  }
  return d * j_->value(back) * dinv;
}

Eigen::MatrixXcd ChirkaNormalization::b_matrix(const Point& p) const {
  const Eigen::MatrixXcd a = coefficient_from_structure(sheared_structure(p));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n_, n_);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(id + a);
  require(lu.isInvertible(), ErrorCode::NotTotallyReal, "I + A is singular");
  return lu.solve(id - a);
}

Eigen::MatrixXcd ChirkaNormalization::b_extension(const Point& p) const {
  Eigen::VectorXd y(n_);
  for (int r = 0; r < n_; ++r) y[r] = p[2 * r + 1];
  const double len = y.norm();
  const Point base = x_only(p);
  const Eigen::MatrixXcd b0 = b_matrix(base);
  if (order_ == 1 || len == 0.0) return b0;
  const Eigen::VectorXd dir = y / len;
  const double s = taylor_step_;
  auto along = [&](double t) {
    Point q = base;
    for (int r = 0; r < n_; ++r) q[2 * r + 1] = t * dir[r];
    return b_matrix(q);
  };
  const Eigen::MatrixXcd p1 = along(s), m1 = along(-s), p2 = along(2 * s), m2 = along(-2 * s);
  // derivatives of t -> B(x, t dir) at t = 0
  Eigen::MatrixXcd out = b0;
  out += len * (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * s);
  if (order_ >= 3) out += len * len / 2.0 * (-p2 + 16.0 * p1 - 30.0 * b0 + 16.0 * m1 - m2) / (12.0 * s * s);
  if (order_ >= 4) out += len * len * len / 6.0 * (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * s * s * s);
  return out;
}

Eigen::VectorXd ChirkaNormalization::psi(const Point& p) const {
  Eigen::VectorXcd y(n_);
  Eigen::VectorXcd x(n_);
  for (int r = 0; r < n_; ++r) {
    x[r] = p[2 * r];
    y[r] = p[2 * r + 1];
  }
  const Eigen::VectorXcd z = x + Complex(0.0, 1.0) * (b_extension(p) * y);
  return from_complex(z);
}

Eigen::MatrixXd ChirkaNormalization::psi_jacobian(const Point& p) const {
  return fd_jacobian([this](const Point& q) { return psi(q); }, p, 1e-4);
}

Eigen::VectorXd ChirkaNormalization::psi_inverse(const Point& w) const {
  Point p = w;
  Eigen::MatrixXd jac = psi_jacobian(p);
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 40; ++it) {
    const Eigen::VectorXd r = psi(p) - w;
    const double err = r.cwiseAbs().maxCoeff();
    // stop once rounding in the Taylor extension dominates
    if (err <= 1e-14 || (err >= 0.5 * best && err <= 1e-12)) return p;
    best = std::min(best, err);
    if (it % 6 == 5) jac = psi_jacobian(p);
    p -= jac.fullPivLu().solve(r);
  }
  require((psi(p) - w).cwiseAbs().maxCoeff() <= 1e-10, ErrorCode::NoConvergence,
          "normalizing coordinates could not be inverted");
  return p;
}

Eigen::MatrixXd ChirkaNormalization::structure(const Point& w) const {
  const Point p = psi_inverse(w);
  const Eigen::MatrixXd d = psi_jacobian(p);
  return d * sheared_structure(p) * d.inverse();
}

Eigen::MatrixXcd ChirkaNormalization::coefficient(const Point& w) const {
  return coefficient_from_structure(structure(w));
}

CoefficientField ChirkaNormalization::coefficient_field(double scale, double radius, int samples) const {
  require(scale > 0.0, ErrorCode::InvalidSpec, "dilation scale must be positive");
  return CoefficientField::from_function(
      n_, [this, scale](const Point& w) { return coefficient(scale * w); }, radius, samples);
}

ChirkaNormalization chirka_normalize(const std::vector<PolyField>& h, std::shared_ptr<const Structure> j, int order) {
  return ChirkaNormalization(h, std::move(j), order);
}

}  // namespace acx
