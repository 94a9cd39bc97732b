#pragma once

#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "acx/linalg.hpp"
#include "acx/polyfield.hpp"
#include "acx/structure.hpp"

namespace acx {

// Linear perturbation of J_st living in the last two rows.
// alpha(l, k), beta(l, k): coefficient of z^l, zbar^l in the k-th bottom-row block.
struct ModelStructureSpec {
  int n = 2;
  Eigen::MatrixXcd alpha;
  Eigen::MatrixXcd beta;
  bool strict_offdiag = true;

  static ModelStructureSpec zero(int n, bool strict = true);
  void validate() const;
  double norm() const;  // max coefficient modulus

  nlohmann::json to_json() const;
  static ModelStructureSpec from_json(const nlohmann::json& j);
};

// Ltilde_k(z) = sum_l alpha(l,k) z^l + beta(l,k) zbar^l, k < n-1
std::vector<PolyField> bottom_row_coefficients(const ModelStructureSpec& spec);

StructureField realize(const ModelStructureSpec& spec, double domain_radius = 1.0);

struct CompatibilityResult {
  bool integrable = false;
  double violation = 0.0;
};
CompatibilityResult compatibility_check(const ModelStructureSpec& spec, double tol = kTolAlgSymbolic);

// max ||dF J - J_st dF|| over the points
double holomorphy_defect(const PolyMap& f, const Structure& j, const std::vector<Point>& points);

struct IntegratingMap {
  PolyMap map;
  double residual = 0.0;
};
IntegratingMap integrating_map(const ModelStructureSpec& spec, const std::vector<Point>& points);

struct FormBasis {
  std::vector<PolyField> forms;        // 1 x 2n rows, (1,0)-forms in the real basis
  std::vector<PolyField> vectors_01;   // 2n x 1, (0,1) vector fields
  std::vector<PolyField> vectors_10;   // 2n x 1, (1,0) vector fields dual to forms
};
FormBasis form_basis(const ModelStructureSpec& spec);

struct HypersurfaceGraph {
  PolyField phi;  // z^n = phi('z, 'zbar)
  double defect = 0.0;
};
// primitive of dphi/dzbar^k = (i/2) Ltilde_k plus a holomorphic phi_tilde
PolyField graph_primitive(const ModelStructureSpec& spec);
HypersurfaceGraph model_hypersurface(const ModelStructureSpec& spec, const PolyField& phi_tilde,
                                     const std::vector<Point>& tangential_points);
// {a . 'z = 0} x C
double product_hypersurface_defect(const ModelStructureSpec& spec, const Eigen::VectorXcd& normal,
                                   const std::vector<Point>& points);
// max relative ||(I - P_T) J t|| over a tangent basis
double complex_tangency_defect(const Eigen::MatrixXd& j, const Eigen::MatrixXd& tangent_basis);

Eigen::MatrixXd q_matrix(const Structure& j, const Point& p);

struct ModelDomainSpec {
  int n = 2;
  PolyField p2;  // real quadratic on C^{n-1}, embedded in C^n
  ModelStructureSpec j0;

  PolyField defining_function() const;  // Re z^n + P2
};

}  // namespace acx
