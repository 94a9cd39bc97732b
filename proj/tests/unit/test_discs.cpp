#include "doctest.h"

#include <memory>

#include "acx/chirka.hpp"
#include "acx/discs.hpp"
#include "acx/errors.hpp"
#include "acx/model.hpp"

using namespace acx;

namespace {
Eigen::VectorXcd scalar(Complex c) {
  Eigen::VectorXcd v(1);
  v[0] = c;
  return v;
}
}  // namespace

TEST_CASE("cauchy-green and beurling reproduce closed forms") {
  const DiscGrid one = sample_disc(32, 32, 1, [](Complex) { return scalar(1.0); });
  const DiscGrid t1 = cauchy_green(one);
  const DiscGrid g = sample_disc(32, 32, 1, [](Complex z) { return scalar(z * z * std::conj(z)); });
  DiscGrid t, s;
  cauchy_green_beurling(g, &t, &s);
  for (int k = 0; k < one.node_count(); ++k) {
    const Complex z = one.zeta(k), zb = std::conj(z);
    CHECK(std::abs(t1.values(k, 0) - zb) < 1e-12);
    CHECK(std::abs(t.values(k, 0) - (z * z * zb * zb / 2.0 - 0.5)) < 1e-3);
    CHECK(std::abs(s.values(k, 0) - z * zb * zb) < 1e-3);
  }
}

TEST_CASE("grid json round trip keeps samples") {
  DiscGrid g = sample_disc(4, 8, 2, [](Complex z) {
    Eigen::VectorXcd v(2);
    v << z, z * z;
    return v;
  });
  const DiscGrid h = DiscGrid::from_json(g.to_json());
  CHECK(h.rings == 4);
  CHECK(h.angles == 8);
  CHECK((h.values - g.values).norm() < 1e-15);
}

TEST_CASE("solver refuses a large coefficient") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(1, 1);
  a(0, 0) = 0.9;
  try {
    solve_disc(CoefficientField::constant(a), HolomorphicSeed::linear(scalar(0.0), scalar(1.0)));
    FAIL("expected SmallnessViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SmallnessViolated);
  }
}

TEST_CASE("reflection restricted to the upper half is the identity") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(1, 1);
  const CoefficientField cf = CoefficientField::constant(a);
  SolveOptions o;
  o.rings = 16;
  o.angles = 16;
  const SolveResult r = solve_half_disc(cf, Eigen::VectorXd::Constant(1, 0.5), o);
  const ReflectResult rr = reflect(r.f, cf);
  const DiscGrid back = restrict_upper(rr.psi);
  CHECK((back.values - r.f.values).norm() < 1e-14);
  const ReflectResult again = reflect(back, cf);
  CHECK((again.psi.values - rr.psi.values).norm() < 1e-14);
}

TEST_CASE("reflection rejects edges off the real axis") {
  DiscGrid half = DiscGrid::make(8, 16, 1, true);
  for (int k = 0; k < half.node_count(); ++k) half.values(k, 0) = half.zeta(k) + Complex(0.0, 0.1);
  const CoefficientField cf = CoefficientField::constant(Eigen::MatrixXcd::Zero(1, 1));
  try {
    reflect(half, cf);
    FAIL("expected EdgeNotReal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EdgeNotReal);
  }
}

TEST_CASE("chirka normalization needs a graph through 0 with flat tangent") {
  auto j = std::make_shared<StructureField>(StructureField::standard(1));
  try {
    ChirkaNormalization({PolyField::x(1, 0) * Complex(0.5)}, j, 3);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
  const ChirkaNormalization ok({PolyField::x(1, 0) * PolyField::x(1, 0)}, j, 3);
  Point p(2);
  p << 0.3, 0.0;
  CHECK(ok.coefficient(p).norm() < 1e-10);
}

TEST_CASE("structure coefficient disc at 128 squared meets the residual target") {
  ModelStructureSpec s = ModelStructureSpec::zero(2, false);
  s.alpha(0, 0) = Complex(0.05, 0.02);
  s.beta(0, 0) = Complex(-0.03, 0.04);
  const StructureField j = realize(s);
  const CoefficientField cf = CoefficientField::from_structure(j);
  Eigen::VectorXcd c(2), d(2);
  c << Complex(0.1, 0.0), Complex(0.0, 0.05);
  d << Complex(0.3, 0.1), Complex(0.2, -0.1);
  SolveOptions o;
  o.rings = 128;
  o.angles = 128;
  const SolveResult r = solve_disc(cf, HolomorphicSeed::linear(c, d), o);
  CHECK(residual(r.f, cf, &j).operator_residual <= 1e-8);
}

TEST_CASE("normalized coefficient vanishes along the real segment") {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2, 2);
  e(1, 0) = 1.0;
  const PolyField c = (PolyField::x(1, 0) + PolyField::y(1, 0) * Complex(0.5)) * Complex(0.3);
  const PolyField nil = PolyField::constant(1, e) * c;
  const PolyField jst = PolyField::constant(1, standard_structure(1).cast<Complex>());
  auto j = std::make_shared<StructureField>((jst + nil * jst - jst * nil - nil * jst * nil).pruned());
  const ChirkaNormalization ch({PolyField::x(1, 0) * PolyField::x(1, 0)}, j, 3);
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    Point p(2);
    p << -0.5 + i / 40.0, 0.0;
    worst = std::max(worst, ch.coefficient(p).norm());
  }
  CHECK(worst <= 1e-8);
}
