#include <benchmark/benchmark.h>

#include <random>

#include "isoclass/bernstein.hpp"
#include "isoclass/isotone.hpp"
#include "isoclass/monotone_fit.hpp"
#include "isoclass/poset.hpp"

using namespace isoclass;

namespace {

std::vector<Point> cube_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts(n, Point(d));
  for (Point& p : pts) {
    for (double& v : p) v = u(rng);
  }
  return pts;
}

WeightedSample cube_sample(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WeightedSample s(d);
  for (const Point& x : cube_points(n, d, seed)) {
    double m = 0;
    for (double v : x) m += v;
    s.add_row(1.0, u(rng) < 0.25 + 0.5 * (m / d >= 0.5) ? 1 : -1, x);
  }
  return s;
}

void BM_BuildDag(benchmark::State& state) {
  const auto pts = cube_points(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(DominanceDag::build(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildDag)->ArgsProduct({{100, 400, 1600}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

void BM_IsotoneSolve(benchmark::State& state) {
  const WeightedSample s = cube_sample(state.range(0), state.range(1), 2);
  const IsotoneProblem p = monotone_problem(s);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_IsotoneSolve)->ArgsProduct({{100, 400, 1600}, {1, 2}})->Unit(benchmark::kMillisecond);

void BM_FitMonotone(benchmark::State& state) {
  const WeightedSample s = cube_sample(state.range(0), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fit_monotone(s));
}
BENCHMARK(BM_FitMonotone)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_FitBernstein(benchmark::State& state) {
  const WeightedSample s = cube_sample(400, 2, 4);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_bernstein(s, {k, k}));
}
BENCHMARK(BM_FitBernstein)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
