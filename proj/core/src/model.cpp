#include "acx/model.hpp"

#include <cmath>

#include "acx/errors.hpp"

namespace acx {

namespace {
const Complex kI(0.0, 1.0);

Eigen::MatrixXcd table_from_json(const nlohmann::json& j, int m, const char* name) {
  require(j.is_array(), ErrorCode::InvalidSpec, std::string("spec: '") + name + "' must be an array");
  require(j.size() == static_cast<size_t>(m * m), ErrorCode::InvalidSpec,
          std::string("spec: '") + name + "' needs (n-1)^2 = " + std::to_string(m * m) + " entries");
  Eigen::MatrixXcd t(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      const auto& e = j[r * m + c];
      require(e.is_array() && e.size() == 2, ErrorCode::InvalidSpec,
              std::string("spec: '") + name + "' entries must be [re, im]");
      t(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return t;
}

nlohmann::json table_to_json(const Eigen::MatrixXcd& t) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index r = 0; r < t.rows(); ++r)
    for (Eigen::Index c = 0; c < t.cols(); ++c) j.push_back({t(r, c).real(), t(r, c).imag()});
  return j;
}

PolyField covector_field(int n, const Eigen::RowVectorXcd& w) { return PolyField::constant(n, w); }

PolyField vector_field(int n, const Eigen::VectorXcd& v) { return PolyField::constant(n, v); }

}  // namespace

ModelStructureSpec ModelStructureSpec::zero(int n, bool strict) {
  ModelStructureSpec s;
  s.n = n;
  s.alpha = Eigen::MatrixXcd::Zero(n - 1, n - 1);
  s.beta = Eigen::MatrixXcd::Zero(n - 1, n - 1);
  s.strict_offdiag = strict;
  return s;
}

void ModelStructureSpec::validate() const {
  require(n >= 2, ErrorCode::InvalidSpec, "spec: n must be at least 2");
  require(alpha.rows() == n - 1 && alpha.cols() == n - 1 && beta.rows() == n - 1 && beta.cols() == n - 1,
          ErrorCode::DimensionMismatch, "spec: alpha and beta must be (n-1)x(n-1)");
  if (strict_offdiag) {
    for (int k = 0; k < n - 1; ++k)
      require(alpha(k, k) == Complex(0.0) && beta(k, k) == Complex(0.0), ErrorCode::InvalidSpec,
              "spec: diagonal coefficient l = k = " + std::to_string(k + 1) + " set while strict_offdiag is on");
  }
}

double ModelStructureSpec::norm() const {
  double m = 0.0;
  if (alpha.size()) m = std::max(m, alpha.cwiseAbs().maxCoeff());
  if (beta.size()) m = std::max(m, beta.cwiseAbs().maxCoeff());
  return m;
}

nlohmann::json ModelStructureSpec::to_json() const {
  return {{"n", n}, {"alpha", table_to_json(alpha)}, {"beta", table_to_json(beta)}, {"strict_offdiag", strict_offdiag}};
}

ModelStructureSpec ModelStructureSpec::from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCode::InvalidSpec, "spec: expected an object");
  require(j.contains("n") && j["n"].is_number_integer(), ErrorCode::InvalidSpec, "spec: missing integer field 'n'");
  ModelStructureSpec s = zero(j["n"].get<int>());
  require(s.n >= 2, ErrorCode::InvalidSpec, "spec: n must be at least 2");
  if (j.contains("alpha")) s.alpha = table_from_json(j["alpha"], s.n - 1, "alpha");
  if (j.contains("beta")) s.beta = table_from_json(j["beta"], s.n - 1, "beta");
  if (j.contains("strict_offdiag")) s.strict_offdiag = j["strict_offdiag"].get<bool>();
  s.validate();
  return s;
}

std::vector<PolyField> bottom_row_coefficients(const ModelStructureSpec& spec) {
  spec.validate();
  const int n = spec.n;
  std::vector<PolyField> lt;
  for (int k = 0; k < n - 1; ++k) {
    PolyField f = PolyField::zero(n);
    for (int l = 0; l < n - 1; ++l) {
      if (spec.alpha(l, k) != Complex(0.0)) f += PolyField::z(n, l) * spec.alpha(l, k);
      if (spec.beta(l, k) != Complex(0.0)) f += PolyField::zbar(n, l) * spec.beta(l, k);
    }
    lt.push_back(f);
  }
  return lt;
}

StructureField realize(const ModelStructureSpec& spec, double domain_radius) {
  const int n = spec.n;
  const auto lt = bottom_row_coefficients(spec);
  PolyField j = PolyField::constant(n, standard_structure(n).cast<Complex>());
  const int r = 2 * n - 2;
  for (int k = 0; k < n - 1; ++k) {
    // block [[a, b], [b, -a]] with Ltilde = a + ib
    const PolyField a = (lt[k] + lt[k].conj()) * Complex(0.5, 0.0);
    const PolyField b = (lt[k] - lt[k].conj()) * Complex(0.0, -0.5);
    PolyField blk(n, 2, 2);
    blk.set_block(0, 0, a);
    blk.set_block(0, 1, b);
    blk.set_block(1, 0, b);
    blk.set_block(1, 1, -a);
    j.set_block(r, 2 * k, blk);
  }
  return StructureField(j.pruned(), domain_radius);
}

CompatibilityResult compatibility_check(const ModelStructureSpec& spec, double tol) {
  spec.validate();
  CompatibilityResult r;
  const Eigen::MatrixXcd asym = spec.beta - spec.beta.transpose();
  r.violation = asym.size() ? asym.cwiseAbs().maxCoeff() : 0.0;
  r.integrable = r.violation <= tol;
  return r;
}

double holomorphy_defect(const PolyMap& f, const Structure& j, const std::vector<Point>& points) {
  const Eigen::MatrixXd jst = standard_structure(j.dim_n());
  double worst = 0.0;
  for (const auto& p : points) {
    const Eigen::MatrixXd df = f.jacobian(p);
    worst = std::max(worst, (df * j.value(p) - jst * df).cwiseAbs().maxCoeff());
  }
  return worst;
}

PolyField graph_primitive(const ModelStructureSpec& spec) {
  const int n = spec.n;
  const auto lt = bottom_row_coefficients(spec);
  PolyField phi = PolyField::zero(n);
  for (int j = 0; j < n - 1; ++j) {
    const PolyField g = lt[j] * Complex(0.0, 0.5);
    // phi = sum_j zbar^j int_0^1 g_j(z, t zbar) dt
    for (const auto& [e, c] : g.terms()) {
      int nu = 0;
      for (int s = n; s < 2 * n; ++s) nu += e[s];
      Exponent f = e;
      f[n + j] += 1;
      phi.add_term(f, c / static_cast<double>(nu + 1));
    }
  }
  return phi.pruned();
}

IntegratingMap integrating_map(const ModelStructureSpec& spec, const std::vector<Point>& points) {
  const auto compat = compatibility_check(spec);
  require(compat.integrable, ErrorCode::NotIntegrable,
          "beta is not symmetric (violation " + std::to_string(compat.violation) + ")");
  const int n = spec.n;
  IntegratingMap out;
  out.map = PolyMap::identity(n);
  out.map.components[n - 1] = PolyField::z(n, n - 1) - graph_primitive(spec);
  out.residual = holomorphy_defect(out.map, realize(spec), points);
  return out;
}

FormBasis form_basis(const ModelStructureSpec& spec) {
  const int n = spec.n;
  const auto lt = bottom_row_coefficients(spec);
  FormBasis fb;
  for (int k = 0; k < n - 1; ++k) fb.forms.push_back(covector_field(n, dz_covector(n, k)));
  PolyField last = covector_field(n, dz_covector(n, n - 1));
  for (int k = 0; k < n - 1; ++k) last -= lt[k] * covector_field(n, dzbar_covector(n, k)) * Complex(0.0, 0.5);
  fb.forms.push_back(last.pruned());

  for (int k = 0; k < n - 1; ++k) {
    fb.vectors_01.push_back((vector_field(n, d_dzbar_vector(n, k)) +
                             lt[k] * vector_field(n, d_dz_vector(n, n - 1)) * Complex(0.0, 0.5))
                                .pruned());
    fb.vectors_10.push_back((vector_field(n, d_dz_vector(n, k)) -
                             lt[k].conj() * vector_field(n, d_dzbar_vector(n, n - 1)) * Complex(0.0, 0.5))
                                .pruned());
  }
  fb.vectors_01.push_back(vector_field(n, d_dzbar_vector(n, n - 1)));
  fb.vectors_10.push_back(vector_field(n, d_dz_vector(n, n - 1)));
  return fb;
}

double complex_tangency_defect(const Eigen::MatrixXd& j, const Eigen::MatrixXd& tangent_basis) {
  const Eigen::MatrixXd q = orth(tangent_basis);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < tangent_basis.cols(); ++c) {
    const Eigen::VectorXd t = tangent_basis.col(c);
    const Eigen::VectorXd jt = j * t;
    const Eigen::VectorXd r = jt - q * (q.transpose() * jt);
    worst = std::max(worst, r.norm() / t.norm());
  }
  return worst;
}

HypersurfaceGraph model_hypersurface(const ModelStructureSpec& spec, const PolyField& phi_tilde,
                                     const std::vector<Point>& tangential_points) {
  const auto compat = compatibility_check(spec);
  require(compat.integrable, ErrorCode::NotIntegrable,
          "graph hypersurface requested for a non-integrable spec (violation " + std::to_string(compat.violation) + ")");
  const int n = spec.n;
  require(phi_tilde.dim_n() == n && phi_tilde.is_scalar(), ErrorCode::DimensionMismatch, "phi_tilde must be scalar on C^n");
  for (const auto& [e, c] : phi_tilde.terms()) {
    bool ok = e[n - 1] == 0;
    for (int s = n; s < 2 * n; ++s) ok = ok && e[s] == 0;
    require(ok, ErrorCode::InvalidSpec, "phi_tilde must be holomorphic in 'z and independent of z^n");
  }
  HypersurfaceGraph g;
  g.phi = (graph_primitive(spec) + phi_tilde).pruned();
  const StructureField j = realize(spec);
  std::vector<PolyField> dphi;
  for (int a = 0; a < 2 * n - 2; ++a) dphi.push_back(g.phi.d_real(a));
  for (const auto& t : tangential_points) {
    require(t.size() == 2 * n - 2 || t.size() == 2 * n, ErrorCode::DimensionMismatch, "tangential point size");
    Point p = Point::Zero(2 * n);
    p.head(2 * n - 2) = t.head(2 * n - 2);
    const Complex zn = g.phi.eval_scalar(p);
    p[2 * n - 2] = zn.real();
    p[2 * n - 1] = zn.imag();
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(2 * n, 2 * n - 2);
    for (int a = 0; a < 2 * n - 2; ++a) {
      const Complex d = dphi[a].eval_scalar(p);
      basis(a, a) = 1.0;
      basis(2 * n - 2, a) = d.real();
      basis(2 * n - 1, a) = d.imag();
    }
    g.defect = std::max(g.defect, complex_tangency_defect(j.value(p), basis));
  }
  return g;
}

double product_hypersurface_defect(const ModelStructureSpec& spec, const Eigen::VectorXcd& normal,
                                   const std::vector<Point>& points) {
  const int n = spec.n;
  require(normal.size() == n - 1 && normal.norm() > 0.0, ErrorCode::InvalidSpec, "normal must be a nonzero vector in C^{n-1}");
  const StructureField j = realize(spec);
  Eigen::MatrixXd eqs = Eigen::MatrixXd::Zero(2, 2 * n);
  for (int k = 0; k < n - 1; ++k) {
    eqs(0, 2 * k) = normal[k].real();
    eqs(0, 2 * k + 1) = -normal[k].imag();
    eqs(1, 2 * k) = normal[k].imag();
    eqs(1, 2 * k + 1) = normal[k].real();
  }
  const Eigen::MatrixXd basis = null_space(eqs);
  double worst = 0.0;
  for (const auto& p0 : points) {
    Eigen::VectorXcd z = to_complex(p0);
    const Complex s = (normal.transpose() * z.head(n - 1))(0);  // a . 'z
    z.head(n - 1) -= s / normal.squaredNorm() * normal.conjugate();
    worst = std::max(worst, complex_tangency_defect(j.value(from_complex(z)), basis));
  }
  return worst;
}

Eigen::MatrixXd q_matrix(const Structure& j, const Point& p) {
  const Eigen::MatrixXd jst = standard_structure(j.dim_n());
  const Eigen::MatrixXd jp = j.value(p);
  const Eigen::MatrixXd sum = jst + jp;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sum);
  const auto& s = svd.singularValues();
  require(s[s.size() - 1] > 1e-12 * std::max(1.0, s[0]), ErrorCode::Singular, "J_st + J is singular at the point");
  return sum.fullPivLu().solve(jst - jp);
}

PolyField ModelDomainSpec::defining_function() const {
  return PolyField::x(n, n - 1) + p2;
}

}  // namespace acx
