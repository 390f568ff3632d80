#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pedeval/geometry/scale.hpp"
#include "pedeval/metrics/analysis.hpp"
#include "pedeval/metrics/report.hpp"
#include "pedeval/metricspace/metricspace.hpp"
#include "pedeval/synthgen/synthgen.hpp"

using namespace pedeval;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<Point2> random_walk(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, 0.05);
  std::vector<Point2> p(n);
  for (std::size_t i = 1; i < n; ++i) p[i] = {p[i - 1].x + 0.05 + step(rng), p[i - 1].y + step(rng)};
  return p;
}

Scene moderate_scene(std::uint64_t seed) {
  synthgen::ScenarioSpec spec;
  spec.density = synthgen::DensityClass::kModerate;
  spec.interaction = synthgen::InteractionClass::kMultidirectional;
  spec.duration_s = 4.0;
  spec.seed = seed;
  return synthgen::simulate(spec);
}

}  // namespace

static void BM_Emd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_values(n, 1), b = random_values(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(metricspace::emd_1d(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Emd)->RangeMultiplier(8)->Range(64, 1 << 15)->Complexity();

static void BM_Dtw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_walk(n, 1), b = random_walk(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(metricspace::dtw(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dtw)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void BM_EvaluateI2V(benchmark::State& state) {
  const auto gen = metrics::Corpus{metrics::analyze(moderate_scene(1))};
  const auto gt = metrics::Corpus{metrics::analyze(moderate_scene(2))};
  for (auto _ : state) benchmark::DoNotOptimize(metrics::evaluate_i2v(gen, gt));
}
BENCHMARK(BM_EvaluateI2V)->Unit(benchmark::kMillisecond);

static void BM_EstimateScale(benchmark::State& state) {
  const int w = 320, h = 240;
  const auto rel = random_values(static_cast<std::size_t>(w * h), 3);
  std::vector<double> met(rel.size());
  for (std::size_t i = 0; i < rel.size(); ++i) met[i] = 2.5 * rel[i] + (i % 5 == 0 ? 10.0 : 0.0);
  const geometry::DepthRaster r(w, h, rel), m(w, h, met);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::estimate_scale(r, m));
}
BENCHMARK(BM_EstimateScale)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
