#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ofp/baselines.hpp"
#include "ofp/geometry.hpp"

using namespace ofp;
using geometry::Point;

static void BM_NearestStrategic(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  std::vector<Point> nodes(1024);
  for (auto& p : nodes) p = {300.0 + u(rng), u(rng)};
  const Point l1{0, 0}, l2{300, 0};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::nearest_strategic(nodes[i++ & 1023], l1, l2, l1, false, 300.0));
  }
}
BENCHMARK(BM_NearestStrategic);

static void BM_IdealLattice(benchmark::State& state) {
  const auto region = geometry::Region::circle(state.range(0) * 300.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::ideal_lattice(region, {0, 0}, 300.0));
  }
}
BENCHMARK(BM_IdealLattice)->Arg(2)->Arg(8);

static void BM_AhbpSelect(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto m = static_cast<NodeId>(state.range(0));
  baselines::TwoHopView v;
  for (NodeId n = 1; n <= m; ++n) {
    v.one_hop.push_back(n);
    std::vector<NodeId> list{0};
    for (NodeId t = 1; t < 4 * m; ++t) {
      if (t != n && rng() % 5 == 0) list.push_back(t);
    }
    v.reach[n] = std::move(list);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(baselines::ahbp_select_brgs(0, v));
  }
}
BENCHMARK(BM_AhbpSelect)->Arg(8)->Arg(32)->Arg(96);
