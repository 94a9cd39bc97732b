#include "acx/kobayashi.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "acx/errors.hpp"

namespace acx {

double royden_lower_bound(const DefiningFunction& rho, const Structure& j, const MetricQuery& q, double c) {
  const int n = j.dim_n();
  require(q.p.size() == 2 * n && q.v.size() == 2 * n, ErrorCode::DimensionMismatch, "query size");
  require(c > 0.0, ErrorCode::InvalidSpec, "constant c must be positive");
  const double r = rho.value(q.p);
  require(r < 0.0, ErrorCode::InvalidSpec, "query point must lie inside the domain");
  require(q.v.norm() > 0.0, ErrorCode::InvalidSpec, "query vector must be nonzero");

  const Eigen::MatrixXd levi = levi_matrix(rho, j, q.p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(levi);
  require(es.eigenvalues().minCoeff() > 0.0, ErrorCode::NotStrictlyPsh,
          "defining function is not strictly plurisubharmonic at the query point");

  const Eigen::RowVectorXcd d_rho = dbar(j, rho.field(), q.p).holomorphic;
  const Eigen::VectorXcd w = q.v.cast<Complex>() - Complex(0.0, 1.0) * (j.value(q.p) * q.v).cast<Complex>();
  const double normal = std::norm((d_rho * w)(0));
  return c * std::sqrt(normal / (r * r) + q.v.squaredNorm() / std::abs(r));
}

UpperBound disc_upper_bound(const DefiningFunction& rho, const Structure& j, const MetricQuery& q,
                            const DiscFamilyOptions& opts) {
  const int n = j.dim_n();
  require(q.p.size() == 2 * n && q.v.size() == 2 * n, ErrorCode::DimensionMismatch, "query size");
  require(rho.value(q.p) < 0.0, ErrorCode::InvalidSpec, "query point must lie inside the domain");
  const double vn = q.v.norm();
  require(vn > 0.0, ErrorCode::InvalidSpec, "query vector must be nonzero");
  const Eigen::VectorXcd center = to_complex(q.p);
  const Eigen::VectorXcd u = to_complex(q.v / vn);

  CoefficientField coeff;
  if (opts.solver_correct) coeff = CoefficientField::from_structure(j, opts.coefficient_radius);

  std::vector<Eigen::VectorXcd> quad{Eigen::VectorXcd::Zero(n)};
  for (const auto& w : opts.quadratic_terms) {
    require(w.size() == n, ErrorCode::DimensionMismatch, "quadratic family term size");
    quad.push_back(w);
  }

  auto admissible = [&](double r, const Eigen::VectorXcd& w) {
    HolomorphicSeed h{{center, r * u, r * r * w}};
    DiscGrid f;
    if (opts.solver_correct) {
      SolveOptions so;
      so.rings = opts.rings;
      so.angles = opts.angles;
      so.pin = true;
      try {
        f = solve_disc(coeff, h, so).f;
      } catch (const Error&) {
        return false;
      }
      if (residual(f, coeff).operator_residual > opts.residual_tol) return false;
    } else {
      f = sample_disc(opts.rings, opts.angles, n, [&](Complex z) { return h.value(z); });
    }
    for (int k = 0; k < f.node_count(); ++k)
      if (rho.value(from_complex(f.values.row(k).transpose())) > 0.0) return false;
    return true;
  };

  UpperBound best;
  best.value = std::numeric_limits<double>::infinity();
  for (size_t m = 0; m < quad.size(); ++m) {
    double lo = 0.0, hi = 1.0;
    while (hi < opts.max_radius && admissible(hi, quad[m])) lo = hi, hi *= 2.0;
    if (hi >= opts.max_radius) hi = opts.max_radius;
    while (hi - lo > opts.bisection_tol * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      (admissible(mid, quad[m]) ? lo : hi) = mid;
    }
    if (lo > 0.0 && vn / lo < best.value) best = {vn / lo, lo, static_cast<int>(m)};
  }
  require(std::isfinite(best.value), ErrorCode::NoAdmissibleDisc, "no disc of the family fits in the domain");
  return best;
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  require(order >= 1, ErrorCode::InvalidSpec, "quadrature order must be positive");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = order == 1 ? x : p1;
      const double pm = order == 1 ? 1.0 : p0;
      dp = order * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

DistanceReport distance_lower_bound(const DefiningFunction& rho, const Structure& j, const Point& x0, const Point& q,
                                    double c, const PathOptions& opts) {
  const double len = (q - x0).norm();
  require(len > opts.min_dist, ErrorCode::InvalidSpec, "path is shorter than the target distance");
  require(opts.panels >= 1, ErrorCode::InvalidSpec, "need at least one panel");
  const Eigen::VectorXd dir = (x0 - q) / len;
  std::vector<double> gx, gw;
  gauss_legendre(opts.order, gx, gw);

  DistanceReport rep;
  double acc = 0.0;
  const double ratio = std::pow(opts.min_dist / len, 1.0 / opts.panels);
  double hi = len;
  for (int k = 0; k < opts.panels; ++k) {
    const double lo = k + 1 == opts.panels ? opts.min_dist : hi * ratio;
    const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
    for (int i = 0; i < opts.order; ++i) {
      const double u = mid + half * gx[i];
      acc += half * gw[i] * royden_lower_bound(rho, j, {q + u * dir, dir}, c);
    }
    rep.nodes += opts.order;
    rep.dist.push_back(lo);
    rep.integral.push_back(acc);
    hi = lo;
  }
  // integral ~ slope * log(1/t) - c0 over the graded tail
  std::vector<double> xs, ys;
  for (size_t i = 0; i < rep.dist.size(); ++i)
    if (rep.dist[i] <= opts.fit_max_dist * (1.0 + 1e-12)) {
      xs.push_back(std::log(1.0 / rep.dist[i]));
      ys.push_back(rep.integral[i]);
    }
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    rep.slope = sxy / sxx;
    rep.c0 = rep.slope * mx - my;
  }
  return rep;
}

}  // namespace acx
