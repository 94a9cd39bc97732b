#include <benchmark/benchmark.h>

#include "acx/discs.hpp"
#include "acx/model.hpp"
#include "acx/sampling.hpp"
#include "acx/structure.hpp"

using namespace acx;

namespace {

ModelStructureSpec bench_spec() {
  ModelStructureSpec s = ModelStructureSpec::zero(3);
  s.alpha(0, 1) = Complex(0.1, 0.05);
  s.beta(0, 1) = Complex(0.2, 0.0);
  s.beta(1, 0) = Complex(-0.1, 0.1);
  return s;
}

void BM_CauchyGreen(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DiscGrid g = sample_disc(m, m, 1, [](Complex z) {
    Eigen::VectorXcd v(1);
    v[0] = z * std::conj(z) + std::conj(z * z);
    return v;
  });
  DiscGrid t, s;
  for (auto _ : state) {
    cauchy_green_beurling(g, &t, &s);
    benchmark::DoNotOptimize(t.values.data());
  }
}
BENCHMARK(BM_CauchyGreen)->Arg(32)->Arg(64)->Arg(128);

void BM_PolyFieldEval(benchmark::State& state) {
  const StructureField j = realize(bench_spec());
  const auto pts = ball_points(6, 64, 1.0);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(j.value(pts[i++ % pts.size()]).data());
  }
}
BENCHMARK(BM_PolyFieldEval);

void BM_Nijenhuis(benchmark::State& state) {
  const StructureField j = realize(bench_spec());
  const auto pts = ball_points(6, 64, 1.0);
  const Eigen::VectorXd x = Eigen::VectorXd::Unit(6, 0), y = Eigen::VectorXd::Unit(6, 3);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nijenhuis(j, pts[i++ % pts.size()], x, y).data());
  }
}
BENCHMARK(BM_Nijenhuis);

void BM_SolveDisc(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 0.1;
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(2), c1 = c0;
  c1[0] = 1.0;
  const HolomorphicSeed h{{c0, c1}};
  SolveOptions o;
  o.rings = m;
  o.angles = m;
  for (auto _ : state) benchmark::DoNotOptimize(solve_disc(CoefficientField::constant(a), h, o).iterations);
}
BENCHMARK(BM_SolveDisc)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
