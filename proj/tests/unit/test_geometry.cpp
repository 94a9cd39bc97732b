#include "doctest.h"

#include "acx/errors.hpp"
#include "acx/kobayashi.hpp"
#include "acx/levi.hpp"
#include "acx/sampling.hpp"
#include "acx/scaling.hpp"

using namespace acx;

namespace {
PolyField ball(int n) {
  PolyField r = PolyField::scalar(n, -1.0);
  for (int k = 0; k < n; ++k) r += PolyField::z(n, k) * PolyField::zbar(n, k);
  return r;
}
}  // namespace

TEST_CASE("ball is strictly psh and a half-space is only psh") {
  const StructureField j = StructureField::standard(2);
  const auto pts = ball_points(4, 10, 0.9);
  const auto dirs = unit_directions(4, 10);
  const PshResult b = classify_psh(DefiningFunction(ball(2)), j, pts, dirs);
  CHECK(b.cls == PshClass::StrictlyPsh);
  CHECK(b.margin == doctest::Approx(4.0).epsilon(1e-9));
  const PshResult h = classify_psh(DefiningFunction(PolyField::x(2, 1)), j, pts, dirs);
  CHECK(h.cls == PshClass::Psh);
}

TEST_CASE("boundary frame is dual to its forms") {
  const DefiningFunction rho(ball(2));
  Point p(4);
  p << 0.6, 0.0, 0.0, 0.8;
  const Frame f = boundary_frame(rho, StructureField::standard(2), p);
  CHECK(f.duality_error < 1e-12);
  CHECK((f.forms * f.vectors - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("canonical basis change conjugates to J_st") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(0, 2) = 0.3;
  a(1, 3) = -0.2;
  a(3, 0) = 0.5;
  const Eigen::MatrixXd j = a * standard_structure(2) * a.inverse();
  const Eigen::MatrixXd l = canonical_basis_change(j);
  CHECK((l * j * l.inverse() - standard_structure(2)).norm() < 1e-12);
}

TEST_CASE("dilation scales follow the nonisotropic weights") {
  const Eigen::VectorXd s = dilation_scales(3, DilationParams{0.25});
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[3] == doctest::Approx(0.5));
  CHECK(s[4] == doctest::Approx(0.25));
  CHECK(s[5] == doctest::Approx(0.25));
}

TEST_CASE("limit model rejects an unnormalized defining function") {
  const int n = 2;
  try {
    limit_model(DefiningFunction(ball(n)), StructureField::standard(n));
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
}

TEST_CASE("Siegel domain is its own limit") {
  const int n = 2;
  const PolyField rho = PolyField::x(n, 1) * Complex(2.0) + PolyField::z(n, 0) * PolyField::zbar(n, 0);
  const ScalingReport sr = scaling_sequence(DefiningFunction(rho), StructureField::standard(n), {0.5, 0.25, 0.125});
  for (double d : sr.structure_dist) CHECK(d < 1e-14);
  for (double d : sr.rho_dist) CHECK(d < 1e-14);
  CHECK(sr.model.levi_margin > 0.0);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double s = 0.0, s14 = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    s14 += w[i] * std::pow(x[i], 14);
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("royden lower bound needs strict pseudoconvexity") {
  MetricQuery q{Point::Zero(4), Eigen::VectorXd::Unit(4, 0)};
  q.p[2] = -0.5;
  try {
    royden_lower_bound(DefiningFunction(PolyField::x(2, 1)), StructureField::standard(2), q);
    FAIL("expected NotStrictlyPsh");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotStrictlyPsh);
  }
}

TEST_CASE("unit disc metric at the center is sandwiched") {
  const DefiningFunction disc(PolyField::z(1, 0) * PolyField::zbar(1, 0) - PolyField::scalar(1, 1.0));
  const StructureField j = StructureField::standard(1);
  const MetricQuery q{Point::Zero(2), Eigen::VectorXd::Unit(2, 0)};
  const double lo = royden_lower_bound(disc, j, q);
  const double up = disc_upper_bound(disc, j, q).value;
  CHECK(lo <= up);
  CHECK(up == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("royden lower bound for a complex-tangent vector") {
  MetricQuery q{Point::Zero(4), Eigen::VectorXd::Unit(4, 2)};
  q.p[0] = std::sqrt(0.99);  // rho(p) = -0.01, v along z^2 is complex-tangent
  CHECK(royden_lower_bound(DefiningFunction(ball(2)), StructureField::standard(2), q, 1.0) ==
        doctest::Approx(10.0).epsilon(1e-9));
}
