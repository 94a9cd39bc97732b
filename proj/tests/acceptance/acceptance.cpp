#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "acx/chirka.hpp"
#include "acx/cli.hpp"
#include "acx/discs.hpp"
#include "acx/errors.hpp"
#include "acx/kobayashi.hpp"
#include "acx/levi.hpp"
#include "acx/lifts.hpp"
#include "acx/model.hpp"
#include "acx/sampling.hpp"
#include "acx/scaling.hpp"

using namespace acx;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Eigen::MatrixXd eye(int m) { return Eigen::MatrixXd::Identity(m, m); }

double square_defect(const Eigen::MatrixXd& j) {
  return (j * j + eye(static_cast<int>(j.rows()))).cwiseAbs().maxCoeff();
}

Complex random_complex(Rng& rng, double s) { return {uniform(rng, -s, s), uniform(rng, -s, s)}; }

// off-diagonal entries only for n >= 3, so the spec is strict there
ModelStructureSpec random_spec(int n, Rng& rng, bool symmetric, double scale = 0.3) {
  ModelStructureSpec s = ModelStructureSpec::zero(n, n >= 3);
  for (int l = 0; l < n - 1; ++l)
    for (int k = 0; k < n - 1; ++k) {
      if (n >= 3 && l == k) continue;
      s.alpha(l, k) = random_complex(rng, scale);
      s.beta(l, k) = random_complex(rng, scale);
    }
  if (symmetric) {
    s.beta = (0.5 * (s.beta + s.beta.transpose())).eval();
  } else if (n >= 3) {
    s.beta(0, 1) += Complex(scale, 0.0);
  }
  return s;
}

ModelStructureSpec scaled(ModelStructureSpec s, double target) {
  const double m = s.norm();
  if (m > 0.0) {
    s.alpha *= target / m;
    s.beta *= target / m;
  }
  return s;
}

// max over coordinate pairs of |N(e_a, e_b)|
double nijenhuis_size(const Structure& j, const Point& p) {
  const int m = 2 * j.dim_n();
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      worst = std::max(worst, nijenhuis(j, p, Eigen::VectorXd::Unit(m, a), Eigen::VectorXd::Unit(m, b)).norm());
  return worst;
}

PolyField abs2(int n, int k) { return PolyField::z(n, k) * PolyField::zbar(n, k); }

PolyField sphere(int n) {
  PolyField r = PolyField::scalar(n, -1.0);
  for (int k = 0; k < n; ++k) r += abs2(n, k);
  return r;
}

// J_st plus bottom-row blocks [[a, b], [b, -a]] with a + i b = lt[k]
StructureField bottom_row_structure(int n, const std::vector<PolyField>& lt) {
  PolyField j = PolyField::constant(n, standard_structure(n).cast<Complex>());
  for (size_t k = 0; k < lt.size(); ++k) {
    const PolyField a = (lt[k] + lt[k].conj()) * Complex(0.5);
    const PolyField b = (lt[k] - lt[k].conj()) * Complex(0.0, -0.5);
    Eigen::MatrixXcd ea = Eigen::MatrixXcd::Zero(2 * n, 2 * n), eb = ea;
    const int r = 2 * n - 2, c = 2 * static_cast<int>(k);
    ea(r, c) = 1.0;
    ea(r + 1, c + 1) = -1.0;
    eb(r, c + 1) = 1.0;
    eb(r + 1, c) = 1.0;
    j += PolyField::constant(n, ea) * a + PolyField::constant(n, eb) * b;
  }
  return StructureField(j.pruned());
}

// ---------------------------------------------------------------------------

Outcome structure_algebra() {
  Rng rng(1);
  double worst = 0.0;
  int specs = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 3;
    const StructureField j = realize(random_spec(n, rng, i % 2 == 0));
    for (const auto& p : ball_points(2 * n, 100, 1.0, i)) worst = std::max(worst, square_defect(j.value(p)));
    ++specs;
  }
  return {worst <= 1e-12, std::to_string(specs) + " specs, max |J^2 + I| = " + fmt("%.2e", worst)};
}

Outcome integrability_dichotomy() {
  Rng rng(2);
  bool ok = true;
  double sym_worst = 0.0, asym_least = 1e300;
  int n2_integrable = 0, n2_total = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 3;
    const bool symmetric = n == 2 || i % 2 == 0;
    const ModelStructureSpec spec = random_spec(n, rng, symmetric);
    const bool integrable = compatibility_check(spec).integrable;
    const StructureField j = realize(spec);
    double lo = 1e300, hi = 0.0;
    for (const auto& p : ball_points(2 * n, 5, 1.0, i)) {
      const double v = nijenhuis_size(j, p);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (n == 2) {
      ++n2_total;
      n2_integrable += integrable ? 1 : 0;
    }
    if (integrable) {
      sym_worst = std::max(sym_worst, hi);
      ok = ok && hi <= 1e-9 && symmetric;
    } else {
      asym_least = std::min(asym_least, lo);
      ok = ok && lo >= 1e-3 && !symmetric;
    }
  }
  ok = ok && n2_integrable == n2_total;
  return {ok, "integrable max |N| = " + fmt("%.2e", sym_worst) + ", non-integrable min |N| = " +
                  fmt("%.2e", asym_least) + ", n=2 integrable " + std::to_string(n2_integrable) + "/" +
                  std::to_string(n2_total)};
}

Outcome integrating_map_check() {
  Rng rng(3);
  double map_worst = 0.0, form_worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 3;
    const ModelStructureSpec spec = random_spec(n, rng, true);
    const StructureField j = realize(spec);
    const auto pts = ball_points(2 * n, 100, 1.0, 10 + i);
    const IntegratingMap f = integrating_map(spec, pts);
    map_worst = std::max(map_worst, f.residual);
    const Complex i1(0.0, 1.0);
    for (const auto& p : pts) {
      const Eigen::MatrixXcd df = f.map.jacobian(p).cast<Complex>();
      const Eigen::MatrixXcd jp = j.value(p).cast<Complex>();
      for (int k = 0; k < n; ++k) {
        const Eigen::RowVectorXcd pulled = dz_covector(n, k) * df;
        form_worst = std::max(form_worst, (pulled * jp - i1 * pulled).cwiseAbs().maxCoeff());
      }
    }
  }
  const bool ok = map_worst <= 1e-9 && form_worst <= 1e-9;
  return {ok, "|dF J - J_st dF| = " + fmt("%.2e", map_worst) + ", pulled-back (1,0) defect = " + fmt("%.2e", form_worst)};
}

Outcome hypersurface_dichotomy() {
  Rng rng(4);
  double graph_worst = 0.0, product_worst = 0.0;
  int rejected = 0, requested = 0;
  for (int i = 0; i < 12; ++i) {
    const int n = 2 + i % 3;
    const auto tangential = ball_points(2 * n - 2, 50, 0.8, 20 + i);
    const auto full = ball_points(2 * n, 50, 0.8, 40 + i);
    PolyField phi_tilde = PolyField::z(n, 0) * PolyField::z(n, 0) * Complex(0.1, 0.05);
    const ModelStructureSpec sym = random_spec(n, rng, true);
    graph_worst = std::max(graph_worst, model_hypersurface(sym, phi_tilde, tangential).defect);
    if (n >= 3) {
      const ModelStructureSpec asym = random_spec(n, rng, false);
      Eigen::VectorXcd normal(n - 1);
      for (int k = 0; k < n - 1; ++k) normal[k] = random_complex(rng, 1.0);
      product_worst = std::max(product_worst, product_hypersurface_defect(asym, normal, full));
      ++requested;
      try {
        model_hypersurface(asym, phi_tilde, tangential);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotIntegrable) ++rejected;
      }
    }
  }
  const bool ok = graph_worst <= 1e-9 && product_worst <= 1e-9 && rejected == requested;
  return {ok, "graph defect = " + fmt("%.2e", graph_worst) + ", product defect = " + fmt("%.2e", product_worst) +
                  ", rejected " + std::to_string(rejected) + "/" + std::to_string(requested)};
}

Outcome lifts_check() {
  Rng rng(5);
  double jc = 0.0, jt = 0.0;
  for (int i = 0; i < 6; ++i) {
    const int n = 2 + i % 3;
    const StructureField j = realize(random_spec(n, rng, i % 2 == 0));
    const auto base = ball_points(2 * n, 100, 1.0, 60 + i);
    const auto fiber = ball_points(2 * n, 100, 1.0, 70 + i);
    for (size_t k = 0; k < base.size(); ++k) {
      const LiftedPoint lp{base[k], fiber[k]};
      jc = std::max(jc, square_defect(complete_lift(j, lp)));
      jt = std::max(jt, square_defect(cotangent_structure(j, lp)));
    }
  }
  int agree = 0;
  for (int i = 0; i < 30; ++i) {
    const int n = 2 + i % 3;
    const ModelStructureSpec spec = random_spec(n, rng, n == 2 || i % 2 == 0);
    const StructureField j = realize(spec);
    const auto base = ball_points(2 * n, 10, 1.0, 80 + i);
    const auto fiber = ball_points(2 * n, 10, 1.0, 110 + i);
    double g = 0.0;
    for (size_t k = 0; k < base.size(); ++k) g = std::max(g, gamma_nj(j, {base[k], fiber[k]}).norm());
    if ((g <= 1e-9) == compatibility_check(spec).integrable) ++agree;
  }
  const bool ok = jc <= 1e-10 && jt <= 1e-10 && agree == 30;
  return {ok, "|(J^c)^2 + I| = " + fmt("%.2e", jc) + ", |Jtilde^2 + I| = " + fmt("%.2e", jt) +
                  ", gamma/integrability agreement " + std::to_string(agree) + "/30"};
}

int conormal_defect(const DefiningFunction& rho, const Structure& j, const Point& x) {
  const ConormalElement ce = conormal_frame(rho, j, x, 1.0);
  require(ce.covector.norm() >= 1e-6, ErrorCode::ZeroSection, "conormal sample on the zero section");
  const LiftedPoint lp{x, ce.covector.transpose()};
  return totally_real_defect(conormal_tangent_basis(rho, j, x, 1.0), cotangent_structure(j, lp));
}

Outcome conormal_check() {
  Rng rng(6);
  int sphere_hi = 0, cases = 0;
  for (int n : {2, 3}) {
    const DefiningFunction rho(sphere(n));
    std::vector<StructureField> js{StructureField::standard(n), realize(scaled(random_spec(n, rng, true), 0.1)),
                                   realize(scaled(random_spec(n, rng, n == 2), 0.1))};
    for (const auto& j : js) {
      ++cases;
      for (const auto& p : ball_points(2 * n, 50, 1.0, 130 + cases)) {
        const Point x = project_to_boundary(rho, p + Eigen::VectorXd::Constant(2 * n, 1e-2));
        sphere_hi = std::max(sphere_hi, conormal_defect(rho, j, x));
      }
    }
  }
  // Levi-flat {Re z^2 = 0}
  const DefiningFunction flat(PolyField::x(2, 1));
  const StructureField jst2 = StructureField::standard(2);
  int flat_lo = 100;
  for (auto p : ball_points(4, 50, 1.0, 150)) {
    p[2] = 0.0;
    flat_lo = std::min(flat_lo, conormal_defect(flat, jst2, p));
  }
  // TN for N = R^n inside TM under the complete lift
  int tn_hi = 0;
  for (int n : {2, 3}) {
    Eigen::MatrixXd real_axis = Eigen::MatrixXd::Zero(2 * n, n);
    for (int k = 0; k < n; ++k) real_axis(2 * k, k) = 1.0;
    const Eigen::MatrixXd basis = tangent_bundle_basis(real_axis);
    std::vector<StructureField> js{StructureField::standard(n), realize(scaled(random_spec(n, rng, true), 0.1))};
    for (const auto& j : js)
      for (const auto& p : ball_points(n, 50, 1.0, 160 + n)) {
        const Point base = real_axis * p;
        const Eigen::VectorXd fiber = real_axis * Eigen::VectorXd(p.reverse());
        tn_hi = std::max(tn_hi, totally_real_defect(basis, complete_lift(j, {base, fiber})));
      }
  }
  const bool ok = sphere_hi == 0 && flat_lo >= 1 && tn_hi == 0;
  return {ok, "sphere max defect " + std::to_string(sphere_hi) + " over " + std::to_string(cases) +
                  " structures, Levi-flat min defect " + std::to_string(flat_lo) + ", TR^n max defect " +
                  std::to_string(tn_hi)};
}

Outcome disc_solver() {
  const double eps = 0.1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = eps;
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(2), c1 = c0, c3 = c0;
  c1[0] = 1.0;
  c3[0] = 1.0 / 3.0;
  const HolomorphicSeed h{{c0, c1, c0, c3}};
  std::vector<double> widths, errors;
  double worst_ratio = 0.0;
  for (int m : {32, 64, 128}) {
    SolveOptions o;
    o.rings = m;
    o.angles = m;
    const SolveResult r = solve_disc(CoefficientField::constant(a), h, o);
    double e = 0.0;
    for (int k = 0; k < r.f.node_count(); ++k) {
      const Eigen::VectorXcd hv = h.value(r.f.zeta(k));
      e = std::max(e, std::abs(r.f.values(k, 0) - (hv[0] - eps * std::conj(hv[0]))));
    }
    for (double q : r.ratios) worst_ratio = std::max(worst_ratio, q);
    widths.push_back(1.0 / m);
    errors.push_back(e);
  }
  const double order = loglog_fit(widths, errors).slope;

  // A-form against Q-form on solved discs for small random structures
  Rng rng(7);
  double spread = 1.0;
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 2;
    const StructureField j = realize(scaled(random_spec(n, rng, i % 2 == 0), 0.1));
    const CoefficientField cf = CoefficientField::from_structure(j);
    Eigen::VectorXcd center(n), dir(n);
    for (int k = 0; k < n; ++k) {
      center[k] = random_complex(rng, 0.1);
      dir[k] = random_complex(rng, 0.3);
    }
    SolveOptions o;
    o.rings = 32;
    o.angles = 32;
    const SolveResult r = solve_disc(cf, HolomorphicSeed::linear(center, dir), o);
    const ResidualReport rr = residual(r.f, cf, &j);
    const double hi = std::max(rr.stencil_residual, rr.q_stencil_residual);
    const double lo = std::min(rr.stencil_residual, rr.q_stencil_residual);
    spread = std::max(spread, hi <= 1e-13 ? 1.0 : hi / lo);
    for (double q : r.ratios) worst_ratio = std::max(worst_ratio, q);
  }
  const bool ok = errors[1] <= 5e-4 && order >= 1.8 && worst_ratio < 0.9 && spread <= 2.0;
  return {ok, "64^2 error = " + fmt("%.2e", errors[1]) + ", order = " + fmt("%.3f", order) + ", max ratio = " +
                  fmt("%.3f", worst_ratio) + ", A/Q residual spread = " + fmt("%.3f", spread)};
}

Outcome reflection() {
  // h(x) = x^2 edge under J = (I + N) J_st (I - N), N = c(x, y) E21
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2, 2);
  e(1, 0) = 1.0;
  const PolyField c = (PolyField::x(1, 0) + PolyField::y(1, 0) * Complex(0.5)) * Complex(0.3);
  const PolyField nil = PolyField::constant(1, e) * c;
  const PolyField jst = PolyField::constant(1, standard_structure(1).cast<Complex>());
  const PolyField j = jst + nil * jst - jst * nil - nil * jst * nil;
  auto js = std::make_shared<StructureField>(j.pruned());
  const ChirkaNormalization ch({PolyField::x(1, 0) * PolyField::x(1, 0)}, js, 3);
  const CoefficientField cf = ch.coefficient_field(0.1);
  SolveOptions o;
  o.rings = 32;
  o.angles = 32;
  const SolveResult r = solve_half_disc(cf, Eigen::VectorXd::Constant(1, 0.5), o);
  const ReflectResult rr = reflect(r.f, cf);
  const bool ok = rr.lambda_edge_sup <= 1e-8 && rr.residual <= o.tol;
  return {ok, "sup |lambda| on edge = " + fmt("%.2e", rr.lambda_edge_sup) + ", doubled residual = " +
                  fmt("%.2e", rr.residual) + ", edge |Im f| = " + fmt("%.2e", rr.edge_deviation)};
}

struct ScalingFixture {
  std::string name;
  DefiningFunction rho;
  StructureField j;
};

std::vector<ScalingFixture> scaling_fixtures() {
  std::vector<ScalingFixture> out;
  {
    const int n = 2;
    const PolyField l = PolyField::zbar(n, 0) * Complex(0.3) + abs2(n, 0) * Complex(0.2) + PolyField::z(n, 1) * Complex(0.1);
    const PolyField rho = PolyField::x(n, 1) * Complex(2.0) + abs2(n, 0) + abs2(n, 0) * PolyField::x(n, 0) * Complex(0.1);
    out.push_back({"siegel-n2", DefiningFunction(rho), bottom_row_structure(n, {l})});
  }
  {
    const int n = 3;
    const PolyField l0 = PolyField::zbar(n, 1) * Complex(0.2) + abs2(n, 0) * Complex(0.1) + PolyField::z(n, 2) * Complex(0.05);
    const PolyField l1 = PolyField::z(n, 0) * Complex(0.1, 0.1) + PolyField::zbar(n, 0) * PolyField::z(n, 1) * Complex(0.15);
    const PolyField rho = PolyField::x(n, 2) * Complex(2.0) + abs2(n, 0) + abs2(n, 1) * Complex(1.5) +
                          PolyField::x(n, 0) * PolyField::x(n, 1) * Complex(0.2) +
                          abs2(n, 1) * PolyField::y(n, 0) * Complex(0.05);
    out.push_back({"quadric-n3", DefiningFunction(rho), bottom_row_structure(n, {l0, l1})});
  }
  {
    const int n = 2;
    // quadratic terms keep the chart structure away from its model limit
    const PolyField l = PolyField::zbar(n, 0) * Complex(0.05, 0.02) + abs2(n, 0) * Complex(0.1) +
                        PolyField::z(n, 0) * PolyField::z(n, 1) * Complex(0.05, -0.05);
    Point q = Point::Zero(2 * n);
    q[2] = -1.0;
    const BoundaryChart bc = normalize_boundary_chart(DefiningFunction(sphere(n)), bottom_row_structure(n, {l}), q);
    out.push_back({"ball-n2", bc.rho, bc.j});
  }
  return out;
}

Outcome scaling_convergence() {
  bool ok = true;
  std::string detail;
  for (const auto& fx : scaling_fixtures()) {
    const ScalingReport sr = scaling_sequence(fx.rho, fx.j, default_deltas());
    const bool pass = std::abs(sr.structure_rate - 0.5) <= 0.1 && sr.rho_rate >= 0.4 && sr.levi_invariance <= 1e-9 &&
                      sr.model.levi_margin > 0.0;
    ok = ok && pass;
    detail += fx.name + " [J " + fmt("%.3f", sr.structure_rate) + ", rho " + fmt("%.3f", sr.rho_rate) + ", levi " +
              fmt("%.1e", sr.levi_invariance) + ", margin " + fmt("%.3f", sr.model.levi_margin) + "] ";
  }
  return {ok, detail};
}

Outcome block_orders() {
  const int n = 2;
  const double a = 0.5, s = std::sqrt(1.0 - a * a);
  const SmoothMap f = SmoothMap::from_callable([&](const Point& p) {
    const Eigen::VectorXcd z = to_complex(p);
    const Complex den = 1.0 - a * z[1];
    Eigen::VectorXcd w(2);
    w[0] = -s * z[0] / den;
    w[1] = (a - z[1]) / den;
    return Eigen::VectorXd(from_complex(w));
  });
  const DefiningFunction ball(sphere(n));
  const StructureField jst = StructureField::standard(n);
  Eigen::VectorXcd q(2);
  q << 0.6, std::polar(0.8, 0.3);
  std::vector<Point> pts;
  for (int k = 2; k <= 6; ++k) pts.push_back(from_complex(q * (1.0 - std::pow(10.0, -k))));
  const BlockOrders bo = tangent_block_orders(f, ball, jst, ball, jst, pts);
  const double target[4] = {0.0, -0.5, 0.5, 0.0};
  bool ok = true;
  std::string exps;
  for (int b = 0; b < 4; ++b) {
    ok = ok && std::abs(bo.exponents[b] - target[b]) <= 0.1;
    exps += (b ? ", " : "") + fmt("%.3f", bo.exponents[b]);
  }
  const double im_final = std::abs(bo.im_nn.back());
  ok = ok && im_final <= 1e-3;
  double band_lo = 1e300, band_hi = 0.0;
  for (double r : bo.distance_ratio) {
    band_lo = std::min(band_lo, r);
    band_hi = std::max(band_hi, r);
  }
  return {ok, "exponents (" + exps + "), final |Im A_nn| = " + fmt("%.2e", im_final) + ", distance ratio in [" +
                  fmt("%.3f", band_lo) + ", " + fmt("%.3f", band_hi) + "]"};
}

Outcome kobayashi_sandwich() {
  bool ok = true;
  std::string detail;
  const int n = 2;
  ModelStructureSpec spec = ModelStructureSpec::zero(n, false);
  spec.alpha(0, 0) = Complex(0.03, 0.01);
  spec.beta(0, 0) = Complex(0.02, -0.01);
  const std::vector<std::pair<std::string, StructureField>> fixtures{{"ball/J_st", StructureField::standard(n)},
                                                                     {"ball/model", realize(spec)}};
  const DefiningFunction ball(sphere(n));
  for (const auto& [name, j] : fixtures) {
    Halton hal(2 * n, 0);
    const auto dirs = unit_directions(2 * n, 100, 0);
    int count = 0, below = 0;
    double worst = 0.0;
    while (count < 100) {
      const Point p = 0.7 * (2.0 * hal.next() - Eigen::VectorXd::Ones(2 * n));
      if (ball.value(p) >= -1e-2) continue;
      const MetricQuery mq{p, dirs[count++]};
      const double lo = royden_lower_bound(ball, j, mq);
      const double up = disc_upper_bound(ball, j, mq).value;
      below += lo <= up ? 1 : 0;
      worst = std::max(worst, lo / up);
    }
    ok = ok && below == 100;
    detail += name + " " + std::to_string(below) + "/100 (max lower/upper " + fmt("%.3f", worst) + "), ";
  }
  // unit disc
  const DefiningFunction disc(abs2(1, 0) - PolyField::scalar(1, 1.0));
  const StructureField j1 = StructureField::standard(1);
  const Point center = Point::Zero(2);
  double center_err = 0.0;
  for (const Eigen::Vector2d v : {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.3, 0.4)}) {
    const double up = disc_upper_bound(disc, j1, {center, v}).value;
    center_err = std::max(center_err, std::abs(up / v.norm() - 1.0));
  }
  ok = ok && center_err <= 0.02;
  Point edge = Point::Zero(2);
  edge[0] = 1.0;
  const DistanceReport dr = distance_lower_bound(disc, j1, center, edge);
  double path_err = 0.0;
  int used = 0;
  for (size_t i = 0; i < dr.dist.size(); ++i) {
    const double t = dr.dist[i];
    if (t < 1e-6 * (1.0 - 1e-9) || t > 1e-2) continue;
    path_err = std::max(path_err, std::abs(dr.integral[i] / (0.5 * std::log(1.0 / t)) - 1.0));
    ++used;
  }
  ok = ok && used > 0 && path_err <= 0.1;
  detail += "disc center error " + fmt("%.2e", center_err) + ", path relative error " + fmt("%.3f", path_err) + " over " +
            std::to_string(used) + " nodes";
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void run_suite(const fs::path& out) {
  fs::remove_all(out);
  fs::create_directories(out);
  cli::ExperimentConfig cfg = cli::load_config(fs::path(ACX_FIXTURES_DIR) / "suite.json");
  cli::apply_seed(cfg, 0);
  for (const auto& r : cli::run(cfg)) cli::write_report(r, out);
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "acx_determinism";
  run_suite(root / "a");
  run_suite(root / "b");
  int files = 0, same = 0;
  for (const auto& e : fs::directory_iterator(root / "a")) {
    ++files;
    const fs::path other = root / "b" / e.path().filename();
    if (fs::exists(other) && slurp(e.path()) == slurp(other)) ++same;
  }
  int files_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(root / "b")) ++files_b;
  fs::remove_all(root);
  const bool ok = files > 0 && same == files && files_b == files;
  return {ok, std::to_string(same) + "/" + std::to_string(files) + " report files byte-identical"};
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;  // 0 = no runtime limit
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "structure algebra", 5, structure_algebra},
      {2, "integrability dichotomy", 10, integrability_dichotomy},
      {3, "integrating map", 10, integrating_map_check},
      {4, "hypersurface dichotomy", 10, hypersurface_dichotomy},
      {5, "lifts", 10, lifts_check},
      {6, "conormal total reality", 20, conormal_check},
      {7, "disc solver", 60, disc_solver},
      {8, "reflection", 30, reflection},
      {9, "scaling convergence", 60, scaling_convergence},
      {10, "tangent block orders", 30, block_orders},
      {11, "kobayashi sandwich", 60, kobayashi_sandwich},
      {12, "determinism", 0, determinism},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s <= 0.0 || secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %2d %-26s %s  (%.2fs%s) %s\n", c.id, c.title, pass ? "PASS" : "FAIL", secs,
                in_time ? "" : ", over time limit", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
