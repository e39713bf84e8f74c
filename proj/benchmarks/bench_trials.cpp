#include <benchmark/benchmark.h>

#include "ofp/simulator.hpp"

using namespace ofp;

namespace {

ScenarioConfig square(ProtocolKind kind, double density) {
  ScenarioConfig c;
  c.region = geometry::Region::rectangle(1800, 1800);
  c.density = density;
  c.protocol.kind = kind;
  return c;
}

}  // namespace

static void BM_OfpTrial(benchmark::State& state) {
  const auto c = square(ProtocolKind::Ofp, static_cast<double>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_trial(c, seed++));
}
BENCHMARK(BM_OfpTrial)->Arg(16)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_FloodTrial(benchmark::State& state) {
  const auto c = square(ProtocolKind::Flood, static_cast<double>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_trial(c, seed++));
}
BENCHMARK(BM_FloodTrial)->Arg(16)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_AhbpTrial(benchmark::State& state) {
  auto c = square(ProtocolKind::Ahbp, 16);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_trial(c, seed++));
}
BENCHMARK(BM_AhbpTrial)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
