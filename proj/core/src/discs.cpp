#include "acx/discs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acx/errors.hpp"
#include "acx/lifts.hpp"
#include "acx/model.hpp"
#include "acx/sampling.hpp"

namespace acx {

namespace {

Point real_point(const Eigen::MatrixXcd& values, int row) { return from_complex(values.row(row).transpose()); }

Point conj_point(const Point& w) {
  Point c = w;
  for (Eigen::Index k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return c;
}

double sup_residual(const DiscGrid& f, const Eigen::MatrixXcd& dz, const Eigen::MatrixXcd& dzbar,
                    const std::function<Eigen::MatrixXcd(int)>& coeff, double sign) {
  double worst = 0.0;
  for (int k = 0; k < f.node_count(); ++k) {
    const Eigen::VectorXcd r = dzbar.row(k).transpose() + sign * coeff(k) * dz.row(k).transpose().conjugate();
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

Eigen::VectorXcd HolomorphicSeed::value(Complex zeta) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
  Complex pw(1.0);
  for (const auto& c : coeffs) {
    v += c * pw;
    pw *= zeta;
  }
  return v;
}

Eigen::VectorXcd HolomorphicSeed::derivative(Complex zeta) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
  Complex pw(1.0);
  for (size_t m = 1; m < coeffs.size(); ++m) {
    v += static_cast<double>(m) * coeffs[m] * pw;
    pw *= zeta;
  }
  return v;
}

HolomorphicSeed HolomorphicSeed::linear(const Eigen::VectorXcd& center, const Eigen::VectorXcd& direction) {
  return HolomorphicSeed{{center, direction}};
}

double estimate_c1_norm(int n, const std::function<Eigen::MatrixXcd(const Point&)>& a, double radius, int samples) {
  const double h = 1e-5;
  double worst = 0.0;
  for (const auto& p : ball_points(2 * n, samples, radius, 0)) {
    double s = a(p).norm();
    for (int k = 0; k < 2 * n; ++k) {
      Point pp = p, pm = p;
      pp[k] += h;
      pm[k] -= h;
      s += ((a(pp) - a(pm)) / (2.0 * h)).norm();
    }
    worst = std::max(worst, s);
  }
  return 1.1 * worst;
}

CoefficientField CoefficientField::constant(const Eigen::MatrixXcd& a) {
  require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "coefficient must be square");
  return {static_cast<int>(a.rows()), [a](Complex, const Point&) { return a; }, 1.1 * a.norm()};
}

CoefficientField CoefficientField::from_function(int n, std::function<Eigen::MatrixXcd(const Point&)> a, double radius,
                                                 int samples) {
  CoefficientField c;
  c.n = n;
  c.c1_norm_estimate = estimate_c1_norm(n, a, radius, samples);
  c.fn = [a = std::move(a)](Complex, const Point& w) { return a(w); };
  return c;
}

CoefficientField CoefficientField::from_poly(const PolyField& a, double radius, int samples) {
  require(a.rows() == a.dim_n() && a.cols() == a.dim_n(), ErrorCode::DimensionMismatch, "coefficient must be n x n");
  return from_function(a.dim_n(), [a](const Point& w) { return a.eval(w); }, radius, samples);
}

CoefficientField CoefficientField::from_structure(const Structure& j, double radius, int samples) {
  return from_function(
      j.dim_n(), [&j](const Point& w) { return coefficient_from_structure(j.value(w)); }, radius, samples);
}

SolveResult solve_disc(const CoefficientField& a, const HolomorphicSeed& h, const SolveOptions& opts) {
  require(h.dim() == a.n, ErrorCode::DimensionMismatch, "seed and coefficient dimensions differ");
  if (opts.check_smallness)
    require(a.c1_norm_estimate <= opts.smallness_bound, ErrorCode::SmallnessViolated,
            "C1 norm estimate " + std::to_string(a.c1_norm_estimate) + " exceeds " +
                std::to_string(opts.smallness_bound));
  SolveResult res;
  res.relaxation = opts.relaxation;
  DiscGrid g = DiscGrid::make(opts.rings, opts.angles, a.n);
  const int nodes = g.node_count();
  Eigen::MatrixXcd hv(nodes, a.n), hd(nodes, a.n);
  std::vector<Complex> zeta(nodes);
  for (int k = 0; k < nodes; ++k) {
    zeta[k] = g.zeta(k);
    hv.row(k) = h.value(zeta[k]).transpose();
    hd.row(k) = h.derivative(zeta[k]).transpose();
  }

  DiscGrid f = g;
  auto assemble = [&](const DiscGrid& gg) {
    DiscGrid t, s;
    cauchy_green_beurling(gg, &t, &s);
    f.values = hv + t.values;
    f.dz = hd + s.values;
    f.dzbar = gg.values;
    if (opts.pin) {
      const Eigen::RowVectorXcd shift = -t.values.row(0);
      const Eigen::RowVectorXcd tilt = -s.values.row(0) - gg.values.row(0);
      for (int k = 0; k < nodes; ++k) {
        f.values.row(k) += shift + zeta[k] * tilt;
        f.dz.row(k) += tilt;
      }
    }
  };

  int rising = 0;
  bool converged = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    assemble(g);
    Eigen::MatrixXcd next(nodes, a.n);
    for (int k = 0; k < nodes; ++k)
      next.row(k) = (-a(zeta[k], real_point(f.values, k)) * f.dz.row(k).transpose().conjugate()).transpose();
    const double step = (next - g.values).cwiseAbs().maxCoeff();
    g.values += res.relaxation * (next - g.values);
    if (!res.steps.empty() && res.steps.back() > 0.0) res.ratios.push_back(step / res.steps.back());
    res.steps.push_back(step);
    res.iterations = it + 1;
    if (step <= opts.tol) {
      converged = true;
      break;
    }
    rising = (res.steps.size() > 1 && step > res.steps[res.steps.size() - 2]) ? rising + 1 : 0;
    if (rising >= 3 && res.relaxation != opts.fallback_relaxation) {
      res.relaxation = opts.fallback_relaxation;
      rising = 0;
    }
  }
  require(converged, ErrorCode::NoConvergence,
          "Picard iteration did not reach " + std::to_string(opts.tol) + " in " + std::to_string(opts.max_iter) +
              " iterations");
  assemble(g);
  res.f = f;
  return res;
}

Eigen::MatrixXcd q_antilinear(const Structure& j, const Point& p) { return split_real_linear(q_matrix(j, p)).antilinear; }

ResidualReport residual(const DiscGrid& f, const CoefficientField& a, const Structure* j) {
  ResidualReport rep;
  auto a_at = [&](int k) { return a(f.zeta(k), real_point(f.values, k)); };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.operator_residual = f.has_derivatives() ? sup_residual(f, f.dz, f.dzbar, a_at, 1.0) : nan;
  StencilDerivatives sd;
  if (!f.half) {
    sd = stencil_derivatives(f);
    rep.stencil_residual = sup_residual(f, sd.dz, sd.dzbar, a_at, 1.0);
  } else {
    rep.stencil_residual = nan;
  }
  if (j) {
    std::vector<Eigen::MatrixXcd> qt(f.node_count());
    for (int k = 0; k < f.node_count(); ++k) qt[k] = q_antilinear(*j, real_point(f.values, k));
    auto q_at = [&](int k) { return qt[k]; };
    rep.q_operator_residual = f.has_derivatives() ? sup_residual(f, f.dz, f.dzbar, q_at, -1.0) : nan;
    rep.q_stencil_residual = f.half ? nan : sup_residual(f, sd.dz, sd.dzbar, q_at, -1.0);
  }
  return rep;
}

DiscGrid restrict_upper(const DiscGrid& full) {
  require(!full.half, ErrorCode::InvalidSpec, "already a half grid");
  DiscGrid h = DiscGrid::make(full.rings, full.angles, full.n, true);
  const bool d = full.has_derivatives();
  if (d) h.dz = h.dzbar = Eigen::MatrixXcd::Zero(h.node_count(), h.n);
  for (int i = 0; i <= full.rings; ++i) {
    for (int a = 0; a < (i == 0 ? 1 : h.stored_angles()); ++a) {
      const int src = full.node(i, a), dst = h.node(i, a);
      h.values.row(dst) = full.values.row(src);
      if (d) {
        h.dz.row(dst) = full.dz.row(src);
        h.dzbar.row(dst) = full.dzbar.row(src);
      }
    }
  }
  return h;
}

ReflectResult reflect(const DiscGrid& half, const CoefficientField& a, double edge_tol) {
  require(half.half, ErrorCode::InvalidSpec, "reflect expects a half-disc grid");
  const int m = half.rings, q = half.angles;
  ReflectResult rr;

  // cluster values on ]-1,1[: center plus the two edge rays
  double edge = half.values.row(0).imag().cwiseAbs().maxCoeff();
  for (int i = 1; i <= m; ++i)
    for (int e : {0, q / 2}) edge = std::max(edge, half.values.row(half.node(i, e)).imag().cwiseAbs().maxCoeff());
  rr.edge_deviation = edge;
  require(edge <= edge_tol, ErrorCode::EdgeNotReal,
          "edge values leave R^n by " + std::to_string(edge) + " > " + std::to_string(edge_tol));

  DiscGrid psi = DiscGrid::make(m, q, half.n);
  const bool d = half.has_derivatives();
  if (d) psi.dz = psi.dzbar = Eigen::MatrixXcd::Zero(psi.node_count(), psi.n);
  rr.lambda.resize(psi.node_count());
  for (int k = 0; k < psi.node_count(); ++k) {
    const int ring = k == 0 ? 0 : 1 + (k - 1) / q;
    const int angle = k == 0 ? 0 : (k - 1) % q;
    const bool upper = angle <= q / 2;
    const int src = half.node(ring, upper ? angle : q - angle);
    const Complex z = psi.zeta(k);
    if (upper) {
      psi.values.row(k) = half.values.row(src);
      if (d) {
        psi.dz.row(k) = half.dz.row(src);
        psi.dzbar.row(k) = half.dzbar.row(src);
      }
      rr.lambda[k] = a(z, real_point(half.values, src));
    } else {
      psi.values.row(k) = half.values.row(src).conjugate();
      if (d) {
        psi.dz.row(k) = half.dz.row(src).conjugate();
        psi.dzbar.row(k) = half.dzbar.row(src).conjugate();
      }
      rr.lambda[k] = a(std::conj(z), real_point(half.values, src)).conjugate();
    }
  }
  for (int k = 0; k < psi.node_count(); ++k) {
    const Complex z = psi.zeta(k);
    if (k == 0 || std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z)))
      rr.lambda_edge_sup = std::max(rr.lambda_edge_sup, rr.lambda[k].norm());
  }
  auto lam = [&](int k) { return rr.lambda[k]; };
  if (d) {
    rr.residual = sup_residual(psi, psi.dz, psi.dzbar, lam, 1.0);
  } else {
    const auto sd = stencil_derivatives(psi);
    rr.residual = sup_residual(psi, sd.dz, sd.dzbar, lam, 1.0);
  }
  rr.psi = psi;
  return rr;
}

SolveResult solve_half_disc(const CoefficientField& a, const Eigen::VectorXd& slope, const SolveOptions& opts) {
  require(slope.size() == a.n, ErrorCode::DimensionMismatch, "seed slope must have n entries");
  require(opts.angles % 2 == 0, ErrorCode::InvalidSpec, "half-disc solve needs an even angle count");
  CoefficientField doubled = a;
  doubled.fn = [a](Complex z, const Point& w) -> Eigen::MatrixXcd {
    if (z.imag() >= 0.0) return a(z, w);
    return a(std::conj(z), conj_point(w)).conjugate();
  };
  HolomorphicSeed seed{{Eigen::VectorXcd::Zero(a.n), slope.cast<Complex>()}};
  SolveResult res = solve_disc(doubled, seed, opts);
  res.f = restrict_upper(res.f);
  return res;
}

TangentLiftResult disc_tangent_lift(const DiscGrid& f, const Structure& j) {
  require(!f.half, ErrorCode::InvalidSpec, "tangent lift expects a full disc grid");
  require(j.dim_n() == f.n, ErrorCode::DimensionMismatch, "structure and disc dimensions differ");
  const int n = f.n;
  Eigen::MatrixXcd dz = f.dz, dzbar = f.dzbar;
  if (!f.has_derivatives()) {
    const auto sd = stencil_derivatives(f);
    dz = sd.dz;
    dzbar = sd.dzbar;
  }
  TangentLiftResult out;
  out.lift = DiscGrid::make(f.rings, f.angles, 2 * n);
  for (int k = 0; k < f.node_count(); ++k) {
    out.lift.values.row(k).head(n) = f.values.row(k);
    out.lift.values.row(k).tail(n) = dz.row(k) + dzbar.row(k);  // df(d/dx)
  }
  const auto base_sd = stencil_derivatives(f);
  const auto lift_sd = stencil_derivatives(out.lift);
  auto a_base = [&](int k) { return coefficient_from_structure(j.value(real_point(f.values, k))); };
  auto a_lift = [&](int k) {
    const Point x = real_point(f.values, k);
    const Eigen::VectorXd t = from_complex(out.lift.values.row(k).tail(n).transpose());
    return coefficient_from_structure(complete_lift(j, LiftedPoint{x, t}));
  };
  out.base_residual = sup_residual(f, base_sd.dz, base_sd.dzbar, a_base, 1.0);
  out.residual = sup_residual(out.lift, lift_sd.dz, lift_sd.dzbar, a_lift, 1.0);
  return out;
}

}  // namespace acx
