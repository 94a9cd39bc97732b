#pragma once

#include <vector>

#include <Eigen/Dense>

#include "acx/discs.hpp"
#include "acx/levi.hpp"
#include "acx/structure.hpp"

namespace acx {

// lower-bound constant; tight within a factor 2 at the center of the unit disc
inline constexpr double kCalibratedC = 0.5;

struct MetricQuery {
  Point p;
  Eigen::VectorXd v;
};

// c [ |d_J rho(p)(v - i J v)|^2 / rho(p)^2 + |v|^2 / |rho(p)| ]^{1/2}
double royden_lower_bound(const DefiningFunction& rho, const Structure& j, const MetricQuery& q,
                          double c = kCalibratedC);

struct DiscFamilyOptions {
  // extra members p + r u zeta + r^2 w zeta^2, one per entry
  std::vector<Eigen::VectorXcd> quadratic_terms;
  bool solver_correct = true;  // solve the pinned holomorphy equation around each seed
  int rings = 16;
  int angles = 16;
  double bisection_tol = 1e-10;
  double max_radius = 64.0;
  double coefficient_radius = 1.0;  // ball on which the coefficient smallness is estimated
  double residual_tol = 1e-6;
};

struct UpperBound {
  double value = 0.0;
  double radius = 0.0;  // df(0)(d/dx) = radius * v / |v|
  int member = 0;       // 0 = linear disc
};
UpperBound disc_upper_bound(const DefiningFunction& rho, const Structure& j, const MetricQuery& q,
                            const DiscFamilyOptions& opts = {});

struct DistanceReport {
  std::vector<double> dist;      // distance to the endpoint, decreasing
  std::vector<double> integral;  // integrated lower bound up to that distance
  double slope = 0.0;            // fit of integral against log(1/dist)
  double c0 = 0.0;               // integral ~ slope log(1/dist) - c0
  int nodes = 0;
};
struct PathOptions {
  int panels = 625;
  int order = 16;  // Gauss-Legendre points per panel
  double min_dist = 1e-6;
  double fit_max_dist = 1e-2;
};
// integrate the lower bound along the segment x0 -> q with panels graded toward q
DistanceReport distance_lower_bound(const DefiningFunction& rho, const Structure& j, const Point& x0, const Point& q,
                                    double c = kCalibratedC, const PathOptions& opts = {});

// nodes and weights on [-1, 1]
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace acx
