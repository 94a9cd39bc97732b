#include "acx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <set>

#include "acx/discs.hpp"
#include "acx/errors.hpp"
#include "acx/kobayashi.hpp"
#include "acx/levi.hpp"
#include "acx/lifts.hpp"
#include "acx/model.hpp"
#include "acx/sampling.hpp"
#include "acx/scaling.hpp"

namespace acx::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTasks{"integrability", "levi", "lifts", "scaling", "disc", "kobayashi"};

// ---- input helpers -------------------------------------------------------

const json& field(const json& obj, const std::string& key, const std::string& path) {
  require(obj.is_object() && obj.contains(key), ErrorCode::InvalidSpec, path + "." + key + ": missing");
  return obj.at(key);
}

int get_int(const json& obj, const std::string& key, const std::string& path, std::optional<int> fallback = {}) {
  if (!obj.contains(key)) {
    require(fallback.has_value(), ErrorCode::InvalidSpec, path + "." + key + ": missing");
    return *fallback;
  }
  require(obj.at(key).is_number_integer(), ErrorCode::InvalidSpec, path + "." + key + ": expected an integer");
  return obj.at(key).get<int>();
}

double get_double(const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    require(fallback.has_value(), ErrorCode::InvalidSpec, path + "." + key + ": missing");
    return *fallback;
  }
  require(obj.at(key).is_number(), ErrorCode::InvalidSpec, path + "." + key + ": expected a number");
  return obj.at(key).get<double>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& path, bool fallback) {
  if (!obj.contains(key)) return fallback;
  require(obj.at(key).is_boolean(), ErrorCode::InvalidSpec, path + "." + key + ": expected a boolean");
  return obj.at(key).get<bool>();
}

Eigen::VectorXd get_vector(const json& j, int size, const std::string& path) {
  require(j.is_array() && static_cast<int>(j.size()) == size, ErrorCode::InvalidSpec,
          path + ": expected " + std::to_string(size) + " numbers");
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) {
    require(j[i].is_number(), ErrorCode::InvalidSpec, path + "[" + std::to_string(i) + "]: expected a number");
    v[i] = j[i].get<double>();
  }
  return v;
}

Eigen::VectorXcd get_complex_vector(const json& j, int size, const std::string& path) {
  require(j.is_array() && static_cast<int>(j.size()) == size, ErrorCode::InvalidSpec,
          path + ": expected " + std::to_string(size) + " [re, im] pairs");
  Eigen::VectorXcd v(size);
  for (int i = 0; i < size; ++i) {
    const auto& e = j[i];
    if (e.is_number()) {
      v[i] = e.get<double>();
    } else {
      require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(), ErrorCode::InvalidSpec,
              path + "[" + std::to_string(i) + "]: expected [re, im]");
      v[i] = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return v;
}

PolyField get_field(const json& obj, const std::string& key, const std::string& path, int n) {
  PolyField f;
  try {
    f = PolyField::from_json(field(obj, key, path));
  } catch (const Error& e) {
    throw Error(e.code(), path + "." + key + ": " + e.what());
  }
  require(f.dim_n() == n, ErrorCode::DimensionMismatch, path + "." + key + ": dimension differs from inputs.n");
  return f;
}

struct StructureInput {
  std::shared_ptr<StructureField> j;
  std::optional<ModelStructureSpec> spec;
};

StructureInput get_structure(const json& in, int n) {
  StructureInput s;
  if (in.contains("spec")) {
    ModelStructureSpec spec;
    try {
      spec = ModelStructureSpec::from_json(in.at("spec"));
    } catch (const Error& e) {
      throw Error(e.code(), std::string("inputs.spec: ") + e.what());
    }
    require(spec.n == n, ErrorCode::DimensionMismatch, "inputs.spec.n: differs from inputs.n");
    s.spec = spec;
    s.j = std::make_shared<StructureField>(realize(spec));
  } else if (in.contains("structure")) {
    PolyField f = get_field(in, "structure", "inputs", n);
    require(f.rows() == 2 * n && f.cols() == 2 * n, ErrorCode::DimensionMismatch,
            "inputs.structure: expected a 2n x 2n field");
    s.j = std::make_shared<StructureField>(f);
  } else {
    s.j = std::make_shared<StructureField>(StructureField::standard(n));
  }
  return s;
}

double tol(const ExperimentConfig& cfg, const std::string& key) { return cfg.tolerances.at(key); }

// ---- pipelines -----------------------------------------------------------

Report run_integrability(const ExperimentConfig& cfg) {
  const json& in = cfg.inputs;
  const int n = get_int(in, "n", "inputs");
  const StructureInput si = get_structure(in, n);
  require(si.spec.has_value(), ErrorCode::InvalidSpec, "inputs.spec: missing");
  const ModelStructureSpec& spec = *si.spec;
  const int count = get_int(in, "points", "inputs", 100);
  const double radius = get_double(in, "radius", "inputs", 1.0);
  require(count > 0 && radius > 0.0, ErrorCode::InvalidSpec, "inputs.points/radius: must be positive");
  const auto pts = ball_points(2 * n, count, radius, cfg.seed);

  Report r;
  r.task = "integrability";
  r.detail.header = {"index", "nijenhuis_max"};
  const CompatibilityResult cr = compatibility_check(spec);
  double nij = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    double local = 0.0;
    for (int a = 0; a < 2 * n; ++a)
      for (int b = a + 1; b < 2 * n; ++b)
        local = std::max(local, nijenhuis(*si.j, pts[i], Eigen::VectorXd::Unit(2 * n, a),
                                          Eigen::VectorXd::Unit(2 * n, b)).norm());
    nij = std::max(nij, local);
    r.detail.add_row({static_cast<double>(i), local});
  }
  const bool consistent = cr.integrable ? nij <= tol(cfg, "nijenhuis") : nij >= tol(cfg, "generic_defect");
  r.summary = {{"task", r.task}, {"n", n}, {"integrable", cr.integrable}, {"violation", cr.violation},
               {"nijenhuis_max", nij}, {"oracle_agrees", consistent}};
  r.pass = consistent;
  if (cr.integrable) {
    const IntegratingMap im = integrating_map(spec, pts);
    r.summary["integrating_residual"] = im.residual;
    r.pass = r.pass && im.residual <= tol(cfg, "nijenhuis");
  }
  r.summary["pass"] = r.pass;
  return r;
}

Report run_levi(const ExperimentConfig& cfg) {
  const json& in = cfg.inputs;
  const int n = get_int(in, "n", "inputs");
  const StructureInput si = get_structure(in, n);
  const DefiningFunction rho(get_field(in, "rho", "inputs", n));
  const int count = get_int(in, "points", "inputs", 200);
  const int ndir = get_int(in, "directions", "inputs", 50);
  const double radius = get_double(in, "radius", "inputs", 1.0);
  require(count > 0 && ndir > 0 && radius > 0.0, ErrorCode::InvalidSpec, "inputs: counts and radius must be positive");
  std::string expect;
  if (in.contains("expect")) {
    require(in["expect"].is_string(), ErrorCode::InvalidSpec, "inputs.expect: expected a string");
    expect = in["expect"].get<std::string>();
    require(expect == "strictly_psh" || expect == "psh" || expect == "neither", ErrorCode::InvalidSpec,
            "inputs.expect: one of strictly_psh, psh, neither");
  }
  const auto pts = ball_points(2 * n, count, radius, cfg.seed);
  const auto dirs = unit_directions(2 * n, ndir, cfg.seed);

  Report r;
  r.task = "levi";
  r.detail.header = {"index", "levi_min_eigenvalue"};
  for (size_t i = 0; i < pts.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(levi_matrix(rho, *si.j, pts[i]));
    r.detail.add_row({static_cast<double>(i), es.eigenvalues().minCoeff()});
  }
  const PshResult psh = classify_psh(rho, *si.j, pts, dirs);
  r.summary = {{"task", r.task}, {"n", n}, {"class", to_string(psh.cls)}, {"margin", psh.margin}};

  // frames along the boundary, when requested
  const int nframes = get_int(in, "frame_points", "inputs", 0);
  double duality = 0.0;
  for (int k = 0; k < nframes; ++k) {
    const Point q = project_to_boundary(rho, pts[k % pts.size()] + Eigen::VectorXd::Constant(2 * n, 1e-3));
    duality = std::max(duality, boundary_frame(rho, *si.j, q).duality_error);
  }
  if (nframes > 0) r.summary["frame_duality_error"] = duality;
  r.pass = (expect.empty() || to_string(psh.cls) == expect) && duality <= tol(cfg, "alg");
  r.summary["pass"] = r.pass;
  return r;
}

Report run_lifts(const ExperimentConfig& cfg) {
  const json& in = cfg.inputs;
  const int n = get_int(in, "n", "inputs");
  const StructureInput si = get_structure(in, n);
  const int count = get_int(in, "points", "inputs", 100);
  const double radius = get_double(in, "radius", "inputs", 1.0);
  const double fiber = get_double(in, "fiber_radius", "inputs", 1.0);
  require(count > 0 && radius > 0.0 && fiber > 0.0, ErrorCode::InvalidSpec, "inputs: counts and radii must be positive");
  const auto base = ball_points(2 * n, count, radius, cfg.seed);
  const auto fibers = ball_points(2 * n, count, fiber, cfg.seed + 1);

  Report r;
  r.task = "lifts";
  r.detail.header = {"index", "complete_lift_square", "cotangent_square", "gamma_norm"};
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4 * n, 4 * n);
  double jc = 0.0, jt = 0.0, gamma = 0.0;
  for (size_t i = 0; i < base.size(); ++i) {
    const LiftedPoint lp{base[i], fibers[i]};
    const Eigen::MatrixXd c = complete_lift(*si.j, lp);
    const Eigen::MatrixXd t = cotangent_structure(*si.j, lp);
    const double a = (c * c + id).cwiseAbs().maxCoeff(), b = (t * t + id).cwiseAbs().maxCoeff();
    const double g = gamma_nj(*si.j, lp).norm();
    jc = std::max(jc, a);
    jt = std::max(jt, b);
    gamma = std::max(gamma, g);
    r.detail.add_row({static_cast<double>(i), a, b, g});
  }
  r.summary = {{"task", r.task}, {"n", n}, {"complete_lift_square", jc}, {"cotangent_square", jt},
               {"gamma_max", gamma}};
  r.pass = jc <= tol(cfg, "alg") && jt <= tol(cfg, "alg");
  if (si.spec) {
    const bool integrable = compatibility_check(*si.spec).integrable;
    const bool agree = integrable == (gamma <= tol(cfg, "nijenhuis"));
    r.summary["integrable"] = integrable;
    r.summary["gamma_agrees"] = agree;
    r.pass = r.pass && agree;
  }
  if (in.contains("rho")) {
    const DefiningFunction rho(get_field(in, "rho", "inputs", n));
    const int m = get_int(in, "conormal_points", "inputs", 50);
    const double c = get_double(in, "c", "inputs", 1.0);
    const int expect = get_int(in, "expect_defect", "inputs", 0);
    require(m > 0, ErrorCode::InvalidSpec, "inputs.conormal_points: must be positive");
    require(c != 0.0, ErrorCode::ZeroSection, "inputs.c: conormal scale must be nonzero");
    int lo = 4 * n, hi = 0;
    for (const auto& p : ball_points(2 * n, m, radius, cfg.seed + 2)) {
      const Point x = project_to_boundary(rho, p + Eigen::VectorXd::Constant(2 * n, 1e-3));
      const ConormalElement ce = conormal_frame(rho, *si.j, x, c);
      const LiftedPoint lp{x, ce.covector.transpose()};
      const int d = totally_real_defect(conormal_tangent_basis(rho, *si.j, x, c), cotangent_structure(*si.j, lp));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    r.summary["conormal_defect_min"] = lo;
    r.summary["conormal_defect_max"] = hi;
    r.pass = r.pass && (expect == 0 ? hi == 0 : lo >= expect);
  }
  r.summary["pass"] = r.pass;
  return r;
}

Report run_scaling(const ExperimentConfig& cfg) {
  const json& in = cfg.inputs;
  const int n = get_int(in, "n", "inputs");
  require(n >= 2, ErrorCode::InvalidSpec, "inputs.n: scaling needs n >= 2");
  const StructureInput si = get_structure(in, n);
  DefiningFunction rho(get_field(in, "rho", "inputs", n));
  StructureField j = *si.j;
  if (in.contains("boundary_point")) {
    const Point q = get_vector(in["boundary_point"], 2 * n, "inputs.boundary_point");
    const BoundaryChart bc = normalize_boundary_chart(rho, j, q);
    rho = bc.rho;
    j = bc.j;
  }
  std::vector<double> deltas = default_deltas();
  if (in.contains("deltas")) {
    const json& d = in["deltas"];
    require(d.is_array() && d.size() >= 3, ErrorCode::InvalidSpec, "inputs.deltas: expected at least 3 numbers");
    deltas = std::vector<double>();
    for (size_t i = 0; i < d.size(); ++i) {
      require(d[i].is_number() && d[i].get<double>() > 0.0 && d[i].get<double>() <= 1.0, ErrorCode::InvalidSpec,
              "inputs.deltas[" + std::to_string(i) + "]: must lie in (0, 1]");
      deltas.push_back(d[i].get<double>());
    }
  }
  const int samples = get_int(in, "samples", "inputs", 500);
  require(samples > 0, ErrorCode::InvalidSpec, "inputs.samples: must be positive");
  const ScalingReport sr = scaling_sequence(rho, j, deltas, cfg.seed, samples);

  Report r;
  r.task = "scaling";
  r.detail.header = {"delta", "structure_dist", "rho_dist"};
  Series s{"structure", "log_delta", "log_structure_dist", {}, {}};
  Series t{"rho", "log_delta", "log_rho_dist", {}, {}};
  for (size_t i = 0; i < sr.deltas.size(); ++i) {
    r.detail.add_row({sr.deltas[i], sr.structure_dist[i], sr.rho_dist[i]});
    s.x.push_back(std::log(sr.deltas[i]));
    s.y.push_back(std::log(sr.structure_dist[i]));
    t.x.push_back(std::log(sr.deltas[i]));
    t.y.push_back(std::log(sr.rho_dist[i]));
  }
  r.series = {s, t};
  const bool rate_ok = std::abs(sr.structure_rate - 0.5) <= tol(cfg, "rate_window");
  const bool rho_ok = sr.rho_rate >= tol(cfg, "rho_rate_min");
  const bool levi_ok = sr.levi_invariance <= tol(cfg, "levi_identity");
  r.pass = rate_ok && rho_ok && levi_ok && sr.model.levi_margin > 0.0;
  r.summary = {{"task", r.task},
               {"n", n},
               {"structure_rate", sr.structure_rate},
               {"rho_rate", sr.rho_rate},
               {"levi_invariance", sr.levi_invariance},
               {"levi_margin", sr.model.levi_margin},
               {"limit_structure", sr.model.j0.to_json()},
               {"limit_p2", sr.model.sigma.p2.to_json()},
               {"pass", r.pass}};
  return r;
}

Report run_disc(const ExperimentConfig& cfg) {
  const json& in = cfg.inputs;
  const int n = get_int(in, "n", "inputs");
  CoefficientField a;
  StructureInput si;
  const double crad = get_double(in, "coefficient_radius", "inputs", 1.0);
  if (in.contains("coefficient")) {
    const PolyField af = get_field(in, "coefficient", "inputs", n);
    require(af.rows() == n && af.cols() == n, ErrorCode::DimensionMismatch, "inputs.coefficient: expected n x n");
    a = CoefficientField::from_poly(af, crad);
  } else {
    si = get_structure(in, n);
    a = CoefficientField::from_structure(*si.j, crad);
  }
  HolomorphicSeed seed;
  const json& sj = field(in, "seed", "inputs");
  require(sj.is_array() && !sj.empty(), ErrorCode::InvalidSpec, "inputs.seed: expected a list of coefficient vectors");
  for (size_t m = 0; m < sj.size(); ++m)
    seed.coeffs.push_back(get_complex_vector(sj[m], n, "inputs.seed[" + std::to_string(m) + "]"));
  SolveOptions opts;
  if (in.contains("resolution")) {
    const Eigen::VectorXd res = get_vector(in["resolution"], 2, "inputs.resolution");
    opts.rings = static_cast<int>(res[0]);
    opts.angles = static_cast<int>(res[1]);
  }
  opts.pin = get_bool(in, "pin", "inputs", false);
  opts.tol = tol(cfg, "solver");
  const SolveResult sol = solve_disc(a, seed, opts);
  const ResidualReport rr = residual(sol.f, a, si.j.get());

  Report r;
  r.task = "disc";
  r.detail.header = {"iteration", "step"};
  Series s{"steps", "iteration", "log10_step", {}, {}};
  for (size_t k = 0; k < sol.steps.size(); ++k) {
    r.detail.add_row({static_cast<double>(k + 1), sol.steps[k]});
    s.x.push_back(static_cast<double>(k + 1));
    s.y.push_back(std::log10(std::max(sol.steps[k], 1e-300)));
  }
  r.series = {s};
  double worst_ratio = 0.0;
  for (double q : sol.ratios) worst_ratio = std::max(worst_ratio, q);
  r.summary = {{"task", r.task},
               {"n", n},
               {"iterations", sol.iterations},
               {"max_ratio", worst_ratio},
               {"c1_norm_estimate", a.c1_norm_estimate},
               {"operator_residual", rr.operator_residual},
               {"stencil_residual", rr.stencil_residual}};
  r.pass = worst_ratio < 0.9 && rr.operator_residual <= tol(cfg, "residual");
  if (si.j) {
    r.summary["q_operator_residual"] = rr.q_operator_residual;
    r.summary["q_stencil_residual"] = rr.q_stencil_residual;
    const double hi = std::max(rr.stencil_residual, rr.q_stencil_residual);
    const double lo = std::min(rr.stencil_residual, rr.q_stencil_residual);
    r.pass = r.pass && hi <= 2.0 * lo + 1e-300;
  }
  r.summary["pass"] = r.pass;
  r.extra_files["disc.json"] = sol.f.to_json().dump(1) + "\n";
  return r;
}

Report run_kobayashi(const ExperimentConfig& cfg) {
  const json& in = cfg.inputs;
  const int n = get_int(in, "n", "inputs");
  const StructureInput si = get_structure(in, n);
  const DefiningFunction rho(get_field(in, "rho", "inputs", n));
  const double c = get_double(in, "c", "inputs", kCalibratedC);
  require(c > 0.0, ErrorCode::InvalidSpec, "inputs.c: must be positive");

  std::vector<MetricQuery> queries;
  if (in.contains("queries")) {
    const json& qs = in["queries"];
    require(qs.is_array(), ErrorCode::InvalidSpec, "inputs.queries: expected an array");
    for (size_t i = 0; i < qs.size(); ++i) {
      const std::string path = "inputs.queries[" + std::to_string(i) + "]";
      queries.push_back({get_vector(field(qs[i], "p", path), 2 * n, path + ".p"),
                         get_vector(field(qs[i], "v", path), 2 * n, path + ".v")});
    }
  } else {
    const int count = get_int(in, "samples", "inputs", 20);
    const double radius = get_double(in, "radius", "inputs", 1.0);
    const double margin = get_double(in, "interior_margin", "inputs", 1e-2);
    Halton h(2 * n, cfg.seed);
    const auto dirs = unit_directions(2 * n, count, cfg.seed);
    int guard = 0;
    while (static_cast<int>(queries.size()) < count && ++guard < 1000 * count) {
      const Point p = radius * (2.0 * h.next() - Eigen::VectorXd::Ones(2 * n));
      if (rho.value(p) < -margin) queries.push_back({p, dirs[queries.size()]});
    }
    require(static_cast<int>(queries.size()) == count, ErrorCode::InvalidSpec,
            "inputs.radius: sampling box barely meets the domain");
  }
  DiscFamilyOptions fam;
  fam.solver_correct = get_bool(in, "solver_correct", "inputs", true);

  Report r;
  r.task = "kobayashi";
  r.detail.header.clear();
  for (int k = 0; k < 2 * n; ++k) r.detail.header.push_back("p" + std::to_string(k));
  for (int k = 0; k < 2 * n; ++k) r.detail.header.push_back("v" + std::to_string(k));
  for (const char* h : {"lower", "upper", "ratio"}) r.detail.header.push_back(h);
  bool sandwich = true;
  double worst = 0.0;
  for (const auto& q : queries) {
    const double lo = royden_lower_bound(rho, *si.j, q, c);
    const double up = disc_upper_bound(rho, *si.j, q, fam).value;
    sandwich = sandwich && lo <= up;
    worst = std::max(worst, lo / up);
    std::vector<double> row(q.p.data(), q.p.data() + q.p.size());
    row.insert(row.end(), q.v.data(), q.v.data() + q.v.size());
    row.insert(row.end(), {lo, up, lo / up});
    r.detail.add_row(row);
  }
  // validity radius of the lower bound: measured, reported, not enforced
  const double lambda0 = get_double(in, "lambda0", "inputs", 0.1);
  require(lambda0 > 0.0, ErrorCode::InvalidSpec, "inputs.lambda0: must be positive");
  std::vector<Point> where;
  for (const auto& q : queries) where.push_back(q.p);
  const double deviation = c2_distance(*si.j, standard_structure(n), where);
  r.summary = {{"task", r.task}, {"n", n}, {"c", c}, {"queries", queries.size()}, {"sandwich", sandwich},
               {"max_lower_over_upper", worst}, {"lambda0", lambda0}, {"structure_c2_deviation", deviation},
               {"within_lambda0", deviation <= lambda0}};
  r.pass = sandwich;
  if (in.contains("path")) {
    const json& pj = in["path"];
    const Point x0 = get_vector(field(pj, "from", "inputs.path"), 2 * n, "inputs.path.from");
    const Point q = get_vector(field(pj, "to", "inputs.path"), 2 * n, "inputs.path.to");
    PathOptions po;
    po.min_dist = get_double(pj, "min_dist", "inputs.path", po.min_dist);
    const DistanceReport dr = distance_lower_bound(rho, *si.j, x0, q, c, po);
    Series s{"path", "log_dist", "integral", {}, {}};
    bool monotone = true;
    for (size_t i = 0; i < dr.dist.size(); ++i) {
      s.x.push_back(std::log(dr.dist[i]));
      s.y.push_back(dr.integral[i]);
      if (i > 0 && dr.integral[i] < dr.integral[i - 1]) monotone = false;
    }
    r.series.push_back(s);
    r.summary["path_slope"] = dr.slope;
    r.summary["path_c0"] = dr.c0;
    r.summary["path_nodes"] = dr.nodes;
    r.summary["path_monotone"] = monotone;
    r.pass = r.pass && monotone && dr.slope > 0.0;
  }
  r.summary["pass"] = r.pass;
  return r;
}

Report run_single(const ExperimentConfig& cfg) {
  if (cfg.task == "integrability") return run_integrability(cfg);
  if (cfg.task == "levi") return run_levi(cfg);
  if (cfg.task == "lifts") return run_lifts(cfg);
  if (cfg.task == "scaling") return run_scaling(cfg);
  if (cfg.task == "disc") return run_disc(cfg);
  return run_kobayashi(cfg);
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"alg", 1e-10},         {"nijenhuis", 1e-9},   {"generic_defect", 1e-3}, {"solver", 1e-8},
      {"residual", 1e-7},     {"rate_window", 0.1},  {"rho_rate_min", 0.4},    {"levi_identity", 1e-9},
  };
  return t;
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& source) {
  require(j.is_object(), ErrorCode::InvalidSpec, "config: expected an object");
  ExperimentConfig cfg;
  cfg.source = source;
  require(j.contains("task") && j["task"].is_string(), ErrorCode::InvalidSpec, "task: missing");
  cfg.task = j["task"].get<std::string>();
  require(cfg.task == "all" || kTasks.count(cfg.task), ErrorCode::InvalidSpec, "task: unknown task '" + cfg.task + "'");
  if (j.contains("seed")) {
    require(j["seed"].is_number_unsigned(), ErrorCode::InvalidSpec, "seed: expected a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  cfg.tolerances = default_tolerances();
  if (j.contains("tolerances")) {
    require(j["tolerances"].is_object(), ErrorCode::InvalidSpec, "tolerances: expected an object");
    for (const auto& [k, v] : j["tolerances"].items()) {
      require(cfg.tolerances.count(k), ErrorCode::InvalidSpec, "tolerances." + k + ": unknown key");
      require(v.is_number() && v.get<double>() > 0.0, ErrorCode::InvalidSpec, "tolerances." + k + ": must be positive");
      cfg.tolerances[k] = v.get<double>();
    }
  }
  if (cfg.task == "all") {
    require(j.contains("configs") && j["configs"].is_array(), ErrorCode::InvalidSpec, "configs: missing");
    for (size_t i = 0; i < j["configs"].size(); ++i) {
      const json& e = j["configs"][i];
      require(e.is_string(), ErrorCode::InvalidSpec, "configs[" + std::to_string(i) + "]: expected a path");
      const auto path = source.parent_path() / e.get<std::string>();
      require(std::filesystem::exists(path), ErrorCode::InvalidSpec,
              "configs[" + std::to_string(i) + "]: file not found: " + path.string());
      ExperimentConfig child = load_config(path);
      require(child.task != "all", ErrorCode::InvalidSpec, "configs[" + std::to_string(i) + "]: nested suites");
      cfg.children.push_back(child);
    }
  } else {
    require(j.contains("inputs") && j["inputs"].is_object(), ErrorCode::InvalidSpec, "inputs: missing");
    cfg.inputs = j["inputs"];
    require(cfg.inputs.contains("n"), ErrorCode::InvalidSpec, "inputs.n: missing");
    require(cfg.inputs["n"].is_number_integer() && cfg.inputs["n"].get<int>() >= 1, ErrorCode::InvalidSpec,
            "inputs.n: expected a positive integer");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  require(std::filesystem::exists(path), ErrorCode::InvalidSpec, "config not found: " + path.string());
  try {
    return parse_config(read_json_file(path), path);
  } catch (const Error& e) {
    throw Error(e.code(), path.filename().string() + ": " + e.what());
  }
}

void apply_tolerance_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos, ErrorCode::InvalidSpec, "--tol expects KEY=VAL, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  double value = 0.0;
  try {
    size_t used = 0;
    value = std::stod(assignment.substr(eq + 1), &used);
    require(used == assignment.size() - eq - 1, ErrorCode::InvalidSpec, "--tol " + key + ": not a number");
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidSpec, "--tol " + key + ": not a number");
  }
  require(cfg.tolerances.count(key), ErrorCode::InvalidSpec, "--tol: unknown key '" + key + "'");
  require(value > 0.0, ErrorCode::InvalidSpec, "--tol " + key + ": must be positive");
  cfg.tolerances[key] = value;
  for (auto& c : cfg.children) apply_tolerance_override(c, assignment);
}

void apply_seed(ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.seed = seed;
  for (auto& c : cfg.children) apply_seed(c, seed);
}

std::vector<Report> run(const ExperimentConfig& cfg) {
  std::vector<Report> out;
  if (cfg.task == "all") {
    for (const auto& c : cfg.children) {
      out.push_back(run_single(c));
      out.back().name = c.source.stem().string();
    }
  } else {
    out.push_back(run_single(cfg));
    out.back().name = out.back().task;
  }
  return out;
}

std::string emit_plot_data(const Report& report, const std::string& kind) {
  for (const auto& s : report.series)
    if (s.name == kind) return plot_text(s.x_label, s.y_label, s.x, s.y);
  throw Error(ErrorCode::UnknownSeries, "report '" + report.task + "' has no series '" + kind + "'");
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  const std::string stem = report.name.empty() ? report.task : report.name;
  write_text_file(dir / (stem + "_summary.json"), report.summary.dump(2) + "\n");
  write_text_file(dir / (stem + "_detail.csv"), report.detail.to_string());
  if (!report.series.empty())
    write_text_file(dir / (stem + "_plot.txt"), emit_plot_data(report, report.series.front().name));
  for (const auto& [file, text] : report.extra_files) write_text_file(dir / (stem + "_" + file), text);
}

std::string task_for_subcommand(const std::string& sub) {
  static const std::map<std::string, std::string> m{
      {"check-integrability", "integrability"}, {"levi", "levi"},           {"lift-check", "lifts"},
      {"scale", "scaling"},                     {"disc-solve", "disc"},     {"kobayashi", "kobayashi"},
      {"all", "all"}};
  const auto it = m.find(sub);
  require(it != m.end(), ErrorCode::InvalidSpec, "unknown subcommand '" + sub + "'");
  return it->second;
}

}  // namespace acx::cli
