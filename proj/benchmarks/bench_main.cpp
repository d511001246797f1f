#include <benchmark/benchmark.h>

#include <cmath>

#include "levyembed/embedding.hpp"
#include "levyembed/excursion.hpp"
#include "levyembed/montecarlo.hpp"
#include "levyembed/rng.hpp"

using namespace levyembed;

namespace {

LevyModel jump_model() { return LevyModel(1.0, 1.0, 1.0, JumpLaw::exponential(1.0)); }

const ScaleFunction& jump_scale() {
  static const auto s = ScaleFunction::build(jump_model(), {20.0, 0.0025});
  return s;
}

void BM_ScaleClosedForm(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(ScaleFunction::build(jump_model(), {20.0, 0.0025}));
}
BENCHMARK(BM_ScaleClosedForm)->Unit(benchmark::kMillisecond);

void BM_ScaleNumeric(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(
        ScaleFunction::build(jump_model(), {10.0, 0.005}, {}, ScaleRoute::ForceNumeric));
}
BENCHMARK(BM_ScaleNumeric)->Unit(benchmark::kMillisecond);

void BM_ScaleWithQ(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(ScaleFunction::build(jump_model(), {10.0, 0.005}, {0.5}));
}
BENCHMARK(BM_ScaleWithQ)->Unit(benchmark::kMillisecond);

void BM_ScaleLookup(benchmark::State& st) {
  const auto& s = jump_scale();
  double x = 0.0;
  for (auto _ : st) {
    x += 0.37;
    if (x > 19.0) x -= 19.0;
    benchmark::DoNotOptimize(s.w(x));
  }
}
BENCHMARK(BM_ScaleLookup);

void BM_BoundarySignCondition(benchmark::State& st) {
  const auto mu = TargetMeasure::two_point(-1.0, 1.0, 3.0 / (4.0 + 2.0 * std::exp(-3.0)));
  for (auto _ : st) benchmark::DoNotOptimize(build_boundary_thm1(mu, jump_scale()));
}
BENCHMARK(BM_BoundarySignCondition)->Unit(benchmark::kMillisecond);

void BM_BoundaryDensity(benchmark::State& st) {
  const auto s = ScaleFunction::build(LevyModel::brownian(), {20.0, 0.0025});
  const auto mu = TargetMeasure::uniform(-1.0, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(build_boundary_thm2(mu, s));
}
BENCHMARK(BM_BoundaryDensity)->Unit(benchmark::kMillisecond);

void BM_BoundaryOneSided(benchmark::State& st) {
  const auto mu = TargetMeasure::exponential(1.0);
  for (auto _ : st) benchmark::DoNotOptimize(build_boundary_thm3(mu, jump_scale()));
}
BENCHMARK(BM_BoundaryOneSided)->Unit(benchmark::kMillisecond);

void BM_LawOfLocalTime(benchmark::State& st) {
  const auto b = build_boundary_thm3(TargetMeasure::exponential(1.0), jump_scale());
  const ExcursionLaw n(jump_scale());
  for (auto _ : st) benchmark::DoNotOptimize(law_of_LT(b, n));
}
BENCHMARK(BM_LawOfLocalTime)->Unit(benchmark::kMillisecond);

void BM_SamplePath(benchmark::State& st) {
  const auto mu = TargetMeasure::two_point(-1.0, 1.0, 3.0 / (4.0 + 2.0 * std::exp(-3.0)));
  const auto b = build_boundary_thm1(mu, jump_scale());
  const auto rule = StopRule::for_boundary(b);
  SimConfig c{.dt = 1e-5, .t_max = 1e7, .n_paths = 1, .epsilon = 0.01};
  std::uint64_t id = 0, steps = 0;
  for (auto _ : st) {
    const auto out = sample_path(jump_model(), rule, c, id++);
    steps += out.steps;
  }
  st.counters["steps/path"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SamplePath)->Unit(benchmark::kMicrosecond);

void BM_PhiloxUniform(benchmark::State& st) {
  StreamRng r(42, 0);
  for (auto _ : st) benchmark::DoNotOptimize(r.uniform());
}
BENCHMARK(BM_PhiloxUniform);

void BM_PhiloxNormal(benchmark::State& st) {
  StreamRng r(42, 0);
  for (auto _ : st) benchmark::DoNotOptimize(r.normal());
}
BENCHMARK(BM_PhiloxNormal);

}  // namespace

BENCHMARK_MAIN();
