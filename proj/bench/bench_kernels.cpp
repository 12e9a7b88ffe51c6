// Parallel kernels against their serial references. On one core the two
// should match; with more cores the parallel rows scale with the thread count.

#include <benchmark/benchmark.h>

#include "hobody/catalog.hpp"
#include "hobody/projection.hpp"
#include "hobody/quadrature.hpp"

using namespace hobody;

namespace {

constexpr std::size_t kCount = 100'000;

const SphereFunction kSmooth = [](const Vec& u) { return u(0) * u(0) + std::abs(u(u.size() - 1)); };

void BM_SphereIntegral(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_sphere_integral(kSmooth, d, kCount, 7).value);
}

void BM_SphereIntegralSerial(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::mc_sphere_integral(kSmooth, d, kCount, 7).value);
}

void BM_StarBodyVolume(benchmark::State& state) {
  const StarBodyOracle cube_oracle = star_oracle(Body(cube(static_cast<int>(state.range(0))).translated(
      Vec::Constant(state.range(0), -0.5))));
  for (auto _ : state) benchmark::DoNotOptimize(star_body_volume(cube_oracle, kCount, 7).value);
}

void BM_StarBodyVolumeSerial(benchmark::State& state) {
  const StarBodyOracle cube_oracle = star_oracle(Body(cube(static_cast<int>(state.range(0))).translated(
      Vec::Constant(state.range(0), -0.5))));
  for (auto _ : state) benchmark::DoNotOptimize(reference::star_body_volume(cube_oracle, kCount, 7).value);
}

void BM_SampleStarBody(benchmark::State& state) {
  const StarBodyOracle ball = star_oracle(Body(Ellipsoid::ball(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(sample_star_body(ball, kCount, 7).size());
}

void BM_SampleStarBodySerial(benchmark::State& state) {
  const StarBodyOracle ball = star_oracle(Body(Ellipsoid::ball(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(reference::sample_star_body(ball, kCount, 7).size());
}

// Projection-body support over random direction tuples, the inner loop of the Petty suites.
template <bool Parallel>
void BM_ProjSupport(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const Polytope p = random_polytope(n, 3);
  for (auto _ : state) {
    const MCEstimate e = mc_average(
        20'000, 7,
        [&](std::size_t i) { return proj_support(p, DirectionTuple(n, sphere_point(n * m, 7, i))); }, 1.0,
        Parallel);
    benchmark::DoNotOptimize(e.value);
  }
}

}  // namespace

BENCHMARK(BM_SphereIntegral)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SphereIntegralSerial)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StarBodyVolume)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StarBodyVolumeSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleStarBody)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleStarBodySerial)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjSupport<true>)->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjSupport<false>)->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
