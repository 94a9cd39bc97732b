#include "doctest.h"

#include "acx/errors.hpp"
#include "acx/lifts.hpp"
#include "acx/model.hpp"
#include "acx/polyfield.hpp"
#include "acx/sampling.hpp"
#include "acx/structure.hpp"

using namespace acx;

namespace {
Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

ModelStructureSpec skew_spec() {
  ModelStructureSpec s = ModelStructureSpec::zero(3);
  s.alpha(0, 1) = Complex(0.1, 0.05);
  s.beta(0, 1) = Complex(0.2, 0.0);
  s.beta(1, 0) = Complex(-0.1, 0.1);
  return s;
}
}  // namespace

TEST_CASE("polyfield evaluation and Wirtinger derivatives") {
  const int n = 2;
  const PolyField f = PolyField::z(n, 0) * PolyField::z(n, 0) * PolyField::zbar(n, 1) + PolyField::scalar(n, 2.0);
  const Point p = pt({0.3, -0.2, 0.5, 0.7});
  const Complex z1(0.3, -0.2), z2(0.5, 0.7);
  CHECK(std::abs(f.eval_scalar(p) - (z1 * z1 * std::conj(z2) + 2.0)) < 1e-14);
  CHECK(std::abs(f.d_z(0).eval_scalar(p) - 2.0 * z1 * std::conj(z2)) < 1e-14);
  CHECK(std::abs(f.d_zbar(1).eval_scalar(p) - z1 * z1) < 1e-14);
  // d/dx = d/dz + d/dzbar
  const Complex dx = f.d_real(0).eval_scalar(p);
  CHECK(std::abs(dx - (f.d_z(0) + f.d_zbar(0)).eval_scalar(p)) < 1e-14);
}

TEST_CASE("polyfield json round trip") {
  const PolyField f = PolyField::x(2, 1) * Complex(1.5, -0.5) + PolyField::zbar(2, 0);
  const PolyField g = PolyField::from_json(f.to_json());
  const Point p = pt({0.1, 0.2, 0.3, 0.4});
  CHECK(std::abs(f.eval_scalar(p) - g.eval_scalar(p)) < 1e-15);
  CHECK_THROWS_AS(PolyField::from_json(nlohmann::json::parse(R"({"n": 2, "terms": [{"deg_z": [1], "deg_zbar": [0, 0], "re": 1}]})")), Error);
}

TEST_CASE("model structures square to -I and integrability follows beta symmetry") {
  const ModelStructureSpec s = skew_spec();
  const StructureField j = realize(s);
  CHECK(structure_check(j, ball_points(6, 20, 1.0)).residual < 1e-13);
  CHECK_FALSE(compatibility_check(s).integrable);
  ModelStructureSpec sym = s;
  sym.beta(1, 0) = sym.beta(0, 1);
  CHECK(compatibility_check(sym).integrable);
  CHECK_THROWS_AS(integrating_map(s, ball_points(6, 5, 1.0)), Error);
}

TEST_CASE("spec validation rejects diagonal entries when strict") {
  ModelStructureSpec s = ModelStructureSpec::zero(3);
  s.alpha(1, 1) = 0.1;
  try {
    s.validate();
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
}

TEST_CASE("standard structure is integrable and its coefficient vanishes") {
  const StructureField j = StructureField::standard(2);
  const Point p = pt({0.2, 0.1, -0.3, 0.4});
  CHECK(nijenhuis(j, p, Eigen::VectorXd::Unit(4, 0), Eigen::VectorXd::Unit(4, 2)).norm() < 1e-15);
  CHECK(coefficient_from_structure(j.value(p)).norm() < 1e-15);
}

TEST_CASE("coefficient and structure convert back and forth") {
  const StructureField j = realize(skew_spec());
  const Point p = pt({0.3, -0.1, 0.2, 0.5, -0.4, 0.1});
  const Eigen::MatrixXd jp = j.value(p);
  CHECK((structure_from_coefficient(coefficient_from_structure(jp)) - jp).norm() < 1e-12);
}

TEST_CASE("cotangent structure convention squares to -I off the integrable case") {
  const StructureField j = realize(skew_spec());
  for (const auto& p : ball_points(6, 10, 1.0, 3)) {
    const LiftedPoint lp{p, Eigen::VectorXd::LinSpaced(6, -1.0, 1.0)};
    const Eigen::MatrixXd t = cotangent_structure(j, lp);
    CHECK((t * t + Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(gamma_nj(j, lp).norm() > 1e-6);
  }
}

TEST_CASE("cotangent lift of a linear map is (Cx, C^-T p)") {
  Eigen::MatrixXd c(4, 4);
  c << 2, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 3;
  const LiftedPoint lp{pt({0.1, 0.2, 0.3, 0.4}), pt({1.0, -1.0, 0.5, 0.0})};
  const LiftedPoint out = cotangent_lift_map(SmoothMap::linear(c), lp);
  CHECK((out.base - c * lp.base).norm() < 1e-14);
  CHECK((out.fiber - c.transpose().inverse() * lp.fiber).norm() < 1e-12);
}

TEST_CASE("conormal frame refuses the zero section") {
  const int n = 2;
  const DefiningFunction rho(PolyField::z(n, 0) * PolyField::zbar(n, 0) + PolyField::z(n, 1) * PolyField::zbar(n, 1) -
                             PolyField::scalar(n, 1.0));
  try {
    conormal_frame(rho, StructureField::standard(n), pt({1, 0, 0, 0}), 0.0);
    FAIL("expected ZeroSection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroSection);
  }
}
