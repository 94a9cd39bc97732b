#include "acx/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acx/errors.hpp"
#include "acx/sampling.hpp"

namespace acx {

namespace {
const Complex kI(0.0, 1.0);

// complex index holding the largest real partial when the x^n partial is too small
int pick_pivot(const Eigen::VectorXd& g) {
  const int n = static_cast<int>(g.size() / 2);
  if (std::abs(g[2 * n - 2]) >= 0.1 * g.norm()) return n - 1;
  Eigen::Index a = 0;
  g.cwiseAbs().maxCoeff(&a);
  return static_cast<int>(a / 2);
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

PolyField substitute_affine(const PolyField& f, const Eigen::MatrixXd& linv, const Point& origin) {
  const int n = f.dim_n();
  require(linv.rows() == 2 * n && linv.cols() == 2 * n && origin.size() == 2 * n, ErrorCode::DimensionMismatch,
          "affine substitution size");
  std::vector<PolyField> w;
  for (int a = 0; a < 2 * n; ++a) w.push_back(PolyField::coordinate(n, a));
  std::vector<PolyField> zmap;
  for (int j = 0; j < n; ++j) {
    PolyField zj = PolyField::scalar(n, Complex(origin[2 * j], origin[2 * j + 1]));
    for (int a = 0; a < 2 * n; ++a) {
      const Complex c(linv(2 * j, a), linv(2 * j + 1, a));
      if (c != Complex(0.0)) zj += w[a] * c;
    }
    zmap.push_back(zj);
  }
  return f.compose(zmap).pruned();
}

StructureField pushforward_affine(const StructureField& j, const Eigen::MatrixXd& l, const Point& origin) {
  const Eigen::MatrixXd linv = l.inverse();
  const PolyField sub = substitute_affine(j.field(), linv, origin);
  return StructureField((l.cast<Complex>() * sub * linv.cast<Complex>()).pruned(), j.domain_radius());
}

Eigen::MatrixXd canonical_basis_change(const Eigen::MatrixXd& j) {
  const int m = static_cast<int>(j.rows());
  require(m % 2 == 0 && j.cols() == m, ErrorCode::DimensionMismatch, "structure matrix must be 2n x 2n");
  require(max_abs(j * j + Eigen::MatrixXd::Identity(m, m)) <= 1e-8, ErrorCode::InvalidSpec,
          "matrix does not square to -I");
  Eigen::MatrixXd b(m, 0);
  for (int k = 0; k < m / 2; ++k) {
    const Eigen::MatrixXd q = b.cols() ? orth(b) : Eigen::MatrixXd(m, 0);
    Eigen::VectorXd best;
    double best_norm = -1.0;
    for (int c = 0; c < m; ++c) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(m, c);
      if (q.cols()) v -= q * (q.transpose() * v);
      if (v.norm() > best_norm + 1e-12) best_norm = v.norm(), best = v;
    }
    best /= best.norm();
    b.conservativeResize(m, b.cols() + 2);
    b.col(2 * k) = best;
    b.col(2 * k + 1) = j * best;
  }
  return b.inverse();
}

ChartNormalization normalize_chart(const StructureField& j, const Point& p, double lambda, int samples,
                                   std::uint64_t seed) {
  require(lambda > 0.0, ErrorCode::InvalidSpec, "dilation lambda must be positive");
  ChartNormalization c;
  c.origin = p;
  c.lambda = lambda;
  c.linear = canonical_basis_change(j.value(p));
  c.pushed = pushforward_affine(j, c.linear / lambda, p);
  const int n = j.dim_n();
  const Eigen::MatrixXd jst = standard_structure(n);
  c.residual = max_abs(c.pushed.value(Point::Zero(2 * n)) - jst);
  c.c2_deviation = c2_distance(c.pushed, jst, ball_points(2 * n, samples, 1.0, seed));
  return c;
}

double c2_distance(const StructureField& j, const Eigen::MatrixXd& ref, const std::vector<Point>& points) {
  const int m = 2 * j.dim_n();
  std::vector<PolyField> second;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) second.push_back(j.partial_field(a).d_real(b));
  double worst = 0.0;
  for (const auto& p : points) {
    double d0 = max_abs(j.value(p) - ref), d1 = 0.0, d2 = 0.0;
    for (int a = 0; a < m; ++a) d1 = std::max(d1, max_abs(j.partial(p, a)));
    for (const auto& s : second) d2 = std::max(d2, max_abs(s.eval_real(p)));
    worst = std::max(worst, d0 + d1 + d2);
  }
  return worst;
}

double c2_distance(const PolyField& a, const PolyField& b, const std::vector<Point>& points) {
  const PolyField d = (a - b).pruned();
  const int m = 2 * d.dim_n();
  std::vector<PolyField> g, h;
  for (int i = 0; i < m; ++i) g.push_back(d.d_real(i));
  for (int i = 0; i < m; ++i)
    for (int k = i; k < m; ++k) h.push_back(g[i].d_real(k));
  double worst = 0.0;
  for (const auto& p : points) {
    double d0 = std::abs(d.eval_real_scalar(p)), d1 = 0.0, d2 = 0.0;
    for (const auto& f : g) d1 = std::max(d1, std::abs(f.eval_real_scalar(p)));
    for (const auto& f : h) d2 = std::max(d2, std::abs(f.eval_real_scalar(p)));
    worst = std::max(worst, d0 + d1 + d2);
  }
  return worst;
}

AdaptedCoordinates boundary_adapted(const DefiningFunction& rho, const Point& q) {
  const int n = rho.dim_n();
  const Eigen::VectorXd g = rho.gradient(q);
  require(g.norm() >= rho.gradient_floor(), ErrorCode::DegenerateGradient, "d rho vanishes at the boundary point");
  AdaptedCoordinates ac;
  ac.q = q;
  ac.pivot = pick_pivot(g);
  const int m = ac.pivot;
  Eigen::VectorXcd rz(n), rzb(n);
  for (int j = 0; j < n; ++j) {
    rz[j] = 0.5 * Complex(g[2 * j], -g[2 * j + 1]);
    rzb[j] = std::conj(rz[j]);
  }
  ac.alpha = Eigen::MatrixXcd::Zero(n, n);
  int row = 0;
  for (int k = 0; k < n; ++k) {
    if (k == m) continue;
    ac.alpha(row, k) = rzb[m];
    ac.alpha(row, m) = -rzb[k];
    ++row;
  }
  ac.alpha.row(n - 1) = rz.transpose();
  ac.real_linear = real_matrix(ac.alpha, Eigen::MatrixXcd::Zero(n, n));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ac.real_linear);
  require(lu.isInvertible(), ErrorCode::DegenerateGradient, "adapted change of variables is singular");
  const Eigen::VectorXd chart_grad = lu.inverse().transpose() * g;
  ac.jet_residual = (chart_grad - 2.0 * Eigen::VectorXd::Unit(2 * n, 2 * n - 2)).cwiseAbs().maxCoeff();
  return ac;
}

Eigen::VectorXd BoundaryChart::from_chart(const Point& w) const { return adapted.q + linear.fullPivLu().solve(w); }

BoundaryChart normalize_boundary_chart(const DefiningFunction& rho, const StructureField& j, const Point& q) {
  const int n = rho.dim_n();
  BoundaryChart bc;
  bc.adapted = boundary_adapted(rho, q);
  const Eigen::MatrixXd a = bc.adapted.real_linear;
  const Eigen::MatrixXd jq = a * j.value(q) * a.inverse();

  Eigen::MatrixXd sys(2, 2 * n);
  sys.row(0) = Eigen::RowVectorXd::Unit(2 * n, 2 * n - 2);
  sys.row(1) = sys.row(0) * jq;
  const Eigen::MatrixXd h = null_space(sys);  // J-invariant complement of the normal pair

  Eigen::MatrixXd b(2 * n, 0);
  for (int k = 0; k < n - 1; ++k) {
    const Eigen::MatrixXd qb = b.cols() ? orth(b) : Eigen::MatrixXd(2 * n, 0);
    auto residual = [&](Eigen::VectorXd v) {
      if (qb.cols()) v -= qb * (qb.transpose() * v);
      return v;
    };
    Eigen::VectorXd best = residual(h * (h.transpose() * Eigen::VectorXd::Unit(2 * n, 2 * k)));
    if (best.norm() < 0.5) {
      for (Eigen::Index c = 0; c < h.cols(); ++c) {
        const Eigen::VectorXd v = residual(h.col(c));
        if (v.norm() > best.norm() + 1e-12) best = v;
      }
    }
    best /= best.norm();
    b.conservativeResize(2 * n, b.cols() + 2);
    b.col(2 * k) = best;
    b.col(2 * k + 1) = jq * best;
  }
  const Eigen::VectorXd bn = sys.completeOrthogonalDecomposition().solve(Eigen::Vector2d(1.0, 0.0));
  b.conservativeResize(2 * n, 2 * n);
  b.col(2 * n - 2) = bn;
  b.col(2 * n - 1) = jq * bn;

  bc.linear = b.inverse() * a;
  bc.j = pushforward_affine(j, bc.linear, q);
  bc.rho = DefiningFunction(substitute_affine(rho.field(), bc.linear.inverse(), q), rho.gradient_floor());
  const Point zero = Point::Zero(2 * n);
  bc.structure_residual = max_abs(bc.j.value(zero) - standard_structure(n));
  bc.jet_residual = std::max(std::abs(bc.rho.value(zero)),
                             (bc.rho.gradient(zero) - 2.0 * Eigen::VectorXd::Unit(2 * n, 2 * n - 2)).cwiseAbs().maxCoeff());
  return bc;
}

Eigen::VectorXd dilation_scales(int n, const DilationParams& d) {
  require(d.delta > 0.0 && d.delta <= 1.0, ErrorCode::InvalidSpec, "delta must lie in (0, 1]");
  Eigen::VectorXd s(2 * n);
  s.head(2 * n - 2).setConstant(std::pow(d.delta, DilationParams::tangential_exponent));
  s.tail(2).setConstant(std::pow(d.delta, DilationParams::normal_exponent));
  return s;
}

StructureField dilate_structure(const StructureField& j, const DilationParams& d) {
  const Eigen::VectorXd s = dilation_scales(j.dim_n(), d);
  return pushforward_affine(j, s.cwiseInverse().asDiagonal().toDenseMatrix(), Point::Zero(s.size()));
}

PolyField dilate_rho(const PolyField& rho, const DilationParams& d) {
  const Eigen::VectorXd s = dilation_scales(rho.dim_n(), d);
  return substitute_affine(rho, s.asDiagonal().toDenseMatrix(), Point::Zero(s.size())) * Complex(1.0 / d.delta, 0.0);
}

LimitModel limit_model(const DefiningFunction& rho, const StructureField& j) {
  const int n = j.dim_n();
  require(rho.dim_n() == n && n >= 2, ErrorCode::DimensionMismatch, "limit model needs matching n >= 2");
  const Point zero = Point::Zero(2 * n);
  require(max_abs(j.value(zero) - standard_structure(n)) <= 1e-9, ErrorCode::InvalidSpec,
          "structure is not normalized: J(0) != J_st");
  require(std::abs(rho.value(zero)) <= 1e-9 &&
              (rho.gradient(zero) - 2.0 * Eigen::VectorXd::Unit(2 * n, 2 * n - 2)).cwiseAbs().maxCoeff() <= 1e-9,
          ErrorCode::InvalidSpec, "defining function is not normalized to 2 Re z^n + O(2)");

  LimitModel lm;
  lm.j0 = ModelStructureSpec::zero(n, false);
  const PolyField l = j.field() - PolyField::constant(n, standard_structure(n).cast<Complex>());
  const int r = 2 * n - 2;
  auto linear_tangential = [n](const Exponent& e) {
    int tot = 0;
    for (int k : e) tot += k;
    return tot == 1 && e[n - 1] == 0 && e[2 * n - 1] == 0;
  };
  for (int k = 0; k < n - 1; ++k) {
    const PolyField a = (l.entry(r, 2 * k) - l.entry(r + 1, 2 * k + 1)) * Complex(0.5, 0.0);
    const PolyField b = (l.entry(r, 2 * k + 1) + l.entry(r + 1, 2 * k)) * Complex(0.5, 0.0);
    const PolyField lt = (a + b * kI).filtered(linear_tangential);
    for (const auto& [e, c] : lt.terms()) {
      for (int s = 0; s < n - 1; ++s) {
        if (e[s] == 1) lm.j0.alpha(s, k) += c(0, 0);
        if (e[n + s] == 1) lm.j0.beta(s, k) += c(0, 0);
      }
    }
  }
  lm.rho_hat = rho.field()
                   .filtered([n](const Exponent& e) {
                     int w2 = 0;
                     for (int s = 0; s < n - 1; ++s) w2 += e[s] + e[n + s];
                     w2 += 2 * (e[n - 1] + e[2 * n - 1]);
                     return w2 == 2;
                   })
                   .pruned();
  lm.sigma.n = n;
  lm.sigma.j0 = lm.j0;
  lm.sigma.p2 = ((lm.rho_hat - PolyField::x(n, n - 1) * Complex(2.0, 0.0)) * Complex(0.5, 0.0)).pruned();

  Eigen::MatrixXd tangential = Eigen::MatrixXd::Identity(2 * n, 2 * n - 2);
  lm.levi_margin = levi_min_on(DefiningFunction(lm.rho_hat), realize(lm.j0), zero, tangential);
  require(lm.levi_margin > 1e-10, ErrorCode::NotPseudoconvex,
          "limit domain is not strictly pseudoconvex at 0 (margin " + std::to_string(lm.levi_margin) + ")");
  return lm;
}

std::vector<double> default_deltas() {
  std::vector<double> d;
  for (int k = 4; k <= 12; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

ScalingReport scaling_sequence(const DefiningFunction& rho, const StructureField& j, const std::vector<double>& deltas,
                               std::uint64_t seed, int samples) {
  const int n = j.dim_n();
  ScalingReport rep;
  rep.model = limit_model(rho, j);
  rep.deltas = deltas;
  std::sort(rep.deltas.begin(), rep.deltas.end(), std::greater<>());

  // compact set: ball of radius 2 cut by {rho_hat <= 0.5}
  std::vector<Point> k;
  Halton hal(2 * n, seed);
  while (static_cast<int>(k.size()) < samples) {
    Eigen::VectorXd u = 2.0 * hal.next() - Eigen::VectorXd::Ones(2 * n);
    if (u.squaredNorm() > 1.0) continue;
    const Point p = 2.0 * u;
    if (rep.model.rho_hat.eval_real_scalar(p) <= 0.5) k.push_back(p);
  }
  const StructureField j0 = realize(rep.model.j0);
  std::vector<Eigen::MatrixXd> j0_at;
  for (const auto& p : k) j0_at.push_back(j0.value(p));

  const auto dirs = unit_directions(2 * n, 10, seed);
  for (double delta : rep.deltas) {
    const DilationParams dp{delta};
    const StructureField jd = dilate_structure(j, dp);
    double sd = 0.0;
    for (size_t i = 0; i < k.size(); ++i) sd = std::max(sd, (jd.value(k[i]) - j0_at[i]).norm());
    rep.structure_dist.push_back(sd);
    const PolyField rd = dilate_rho(rho.field(), dp);
    rep.rho_dist.push_back(c2_distance(rd, rep.model.rho_hat, k));

    // Levi form is natural under the dilation
    const Eigen::VectorXd s = dilation_scales(n, dp);
    const DefiningFunction pulled(rd * Complex(delta, 0.0));
    const Point zero = Point::Zero(2 * n);
    for (const auto& v : dirs) {
      const double lhs = levi_form(rho, j, zero, s.cwiseProduct(v));
      const double rhs = levi_form(pulled, jd, zero, v);
      rep.levi_invariance = std::max(rep.levi_invariance, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  // drop the two largest deltas before fitting
  const size_t skip = std::min<size_t>(2, rep.deltas.size());
  const std::vector<double> fd(rep.deltas.begin() + skip, rep.deltas.end());
  const std::vector<double> fs(rep.structure_dist.begin() + skip, rep.structure_dist.end());
  const std::vector<double> fr(rep.rho_dist.begin() + skip, rep.rho_dist.end());
  rep.structure_rate = loglog_fit(fd, fs).slope;
  rep.rho_rate = loglog_fit(fd, fr).slope;
  return rep;
}

Point project_to_boundary(const DefiningFunction& rho, const Point& p) {
  Point q = p;
  for (int it = 0; it < 60; ++it) {
    const double v = rho.value(q);
    const Eigen::VectorXd g = rho.gradient(q);
    require(g.norm() >= rho.gradient_floor(), ErrorCode::DegenerateGradient, "gradient vanishes while projecting");
    q -= v * g / g.squaredNorm();
    if (std::abs(v) < 1e-15) break;
  }
  return q;
}

BlockOrders tangent_block_orders(const SmoothMap& f, const DefiningFunction& rho, const StructureField& j,
                                 const DefiningFunction& rho_target, const StructureField& j_target,
                                 const std::vector<Point>& points) {
  const int n = j.dim_n();
  BlockOrders bo;
  for (const auto& p : points) {
    const Point q = project_to_boundary(rho, p);
    const double dist = (p - q).norm();
    const Eigen::VectorXd fp = f.value(p);
    const Point s = project_to_boundary(rho_target, fp);

    const BoundaryChart src = normalize_boundary_chart(rho, j, q);
    const BoundaryChart tgt = normalize_boundary_chart(rho_target, j_target, s);
    const Frame x = boundary_frame(src.rho, src.j, src.to_chart(p));
    const Frame xt = boundary_frame(tgt.rho, tgt.j, tgt.to_chart(fp));
    const Eigen::MatrixXd df = tgt.linear * f.jacobian(p) * src.linear.inverse();
    const Eigen::MatrixXcd a = xt.forms * df.cast<Complex>() * x.vectors;

    bo.dists.push_back(dist);
    bo.tt.push_back(a.topLeftCorner(n - 1, n - 1).norm());
    bo.tn.push_back(a.topRightCorner(n - 1, 1).norm());
    bo.nt.push_back(a.bottomLeftCorner(1, n - 1).norm());
    bo.nn.push_back(std::abs(a(n - 1, n - 1)));
    bo.im_nn.push_back(a(n - 1, n - 1).imag());
    bo.distance_ratio.push_back((fp - s).norm() / dist);
  }
  const std::vector<double>* series[4] = {&bo.tt, &bo.tn, &bo.nt, &bo.nn};
  for (int b = 0; b < 4; ++b) {
    const double top = *std::max_element(series[b]->begin(), series[b]->end());
    bo.exponents[b] = top < 1e-12 ? std::numeric_limits<double>::quiet_NaN() : loglog_fit(bo.dists, *series[b]).slope;
  }
  return bo;
}

}  // namespace acx
