#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "acx/polyfield.hpp"
#include "acx/structure.hpp"

namespace acx {

// Polar grid on the closed unit disc: a center node plus `rings` circles r_i = i / rings,
// each with `angles` equispaced nodes. A half grid keeps angles 0..angles/2 inclusive.
struct DiscGrid {
  int rings = 0;
  int angles = 0;
  bool half = false;
  int n = 1;
  Eigen::MatrixXcd values;  // node x component
  Eigen::MatrixXcd dz;      // optional derivative samples, same shape
  Eigen::MatrixXcd dzbar;

  static DiscGrid make(int rings, int angles, int n, bool half = false);
  int stored_angles() const { return half ? angles / 2 + 1 : angles; }
  int node_count() const { return 1 + rings * stored_angles(); }
  int node(int ring, int angle) const { return ring == 0 ? 0 : 1 + (ring - 1) * stored_angles() + angle; }
  double radius(int ring) const { return static_cast<double>(ring) / rings; }
  double theta(int angle) const;
  Complex zeta(int node) const;
  bool has_derivatives() const { return dz.size() == values.size() && dzbar.size() == values.size(); }

  nlohmann::json to_json() const;
  static DiscGrid from_json(const nlohmann::json& j);
};

DiscGrid sample_disc(int rings, int angles, int n, const std::function<Eigen::VectorXcd(Complex)>& f);

// T[g] = -(1/pi) int g(w) / (w - zeta) dA, so dbar T[g] = g; S[g] = d T[g]
DiscGrid cauchy_green(const DiscGrid& g);
DiscGrid beurling(const DiscGrid& g);
void cauchy_green_beurling(const DiscGrid& g, DiscGrid* t, DiscGrid* s);

struct StencilDerivatives {
  Eigen::MatrixXcd dz;
  Eigen::MatrixXcd dzbar;
};
// radial finite differences (one-sided on the outer ring), spectral in angle
StencilDerivatives stencil_derivatives(const DiscGrid& f);

// h(zeta) = sum_m coeffs[m] zeta^m
struct HolomorphicSeed {
  std::vector<Eigen::VectorXcd> coeffs;

  int dim() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().size()); }
  Eigen::VectorXcd value(Complex zeta) const;
  Eigen::VectorXcd derivative(Complex zeta) const;
  static HolomorphicSeed linear(const Eigen::VectorXcd& center, const Eigen::VectorXcd& direction);
};

// A(zeta, w): the coefficient may depend on the disc parameter (reflected problems)
struct CoefficientField {
  int n = 1;
  std::function<Eigen::MatrixXcd(Complex, const Point&)> fn;
  double c1_norm_estimate = 0.0;

  Eigen::MatrixXcd operator()(Complex zeta, const Point& w) const { return fn(zeta, w); }

  static CoefficientField constant(const Eigen::MatrixXcd& a);
  static CoefficientField from_poly(const PolyField& a, double radius = 1.0, int samples = 64);
  static CoefficientField from_structure(const Structure& j, double radius = 1.0, int samples = 64);
  static CoefficientField from_function(int n, std::function<Eigen::MatrixXcd(const Point&)> a, double radius = 1.0,
                                        int samples = 64);
};
// 1.1 * sup over a ball of |A|_F + sum_a |dA/dx^a|_F
double estimate_c1_norm(int n, const std::function<Eigen::MatrixXcd(const Point&)>& a, double radius, int samples);

struct SolveOptions {
  int rings = 64;
  int angles = 64;
  double tol = 1e-8;
  int max_iter = 200;
  double relaxation = 1.0;
  double fallback_relaxation = 0.5;
  bool pin = false;  // keep f(0) = h(0) and df(0)(d/dx) = h'(0)
  bool check_smallness = true;
  double smallness_bound = 0.5;
};

struct SolveResult {
  DiscGrid f;
  int iterations = 0;
  std::vector<double> steps;   // sup |g_{k+1} - g_k|
  std::vector<double> ratios;  // steps[k+1] / steps[k]
  double relaxation = 1.0;
};
SolveResult solve_disc(const CoefficientField& a, const HolomorphicSeed& h, const SolveOptions& opts = {});

struct ResidualReport {
  double operator_residual = 0.0;  // with the solver's derivative samples
  double stencil_residual = 0.0;   // with grid stencils
  double q_operator_residual = -1.0;
  double q_stencil_residual = -1.0;
};
// sup |dbar f + A(f) conj(d f)|; Q-form entries filled when a structure is given
ResidualReport residual(const DiscGrid& f, const CoefficientField& a, const Structure* j = nullptr);
// antilinear part of Q = (J_st + J)^{-1} (J_st - J)
Eigen::MatrixXcd q_antilinear(const Structure& j, const Point& p);

struct ReflectResult {
  DiscGrid psi;                          // full grid
  std::vector<Eigen::MatrixXcd> lambda;  // per node
  double edge_deviation = 0.0;           // max |Im f| on ]-1,1[
  double lambda_edge_sup = 0.0;
  double residual = 0.0;                 // of dbar psi + lambda conj(d psi)
};
inline constexpr double kEdgeTol = 1e-6;
ReflectResult reflect(const DiscGrid& half, const CoefficientField& a, double edge_tol = kEdgeTol);
// restriction of a full grid to the upper half
DiscGrid restrict_upper(const DiscGrid& full);
// doubled problem with coefficient A on the upper half and conj(A(conj w)) below, real seed s zeta
SolveResult solve_half_disc(const CoefficientField& a, const Eigen::VectorXd& slope, const SolveOptions& opts = {});

struct TangentLiftResult {
  DiscGrid lift;  // 2n components: (f, df(d/dx))
  double residual = 0.0;
  double base_residual = 0.0;
};
TangentLiftResult disc_tangent_lift(const DiscGrid& f, const Structure& j);

}  // namespace acx
