// Acceptance runner: evaluates criteria 1-9 and prints one PASS/FAIL line
// for each, followed by the numbers behind the verdict.
//
//   acceptance [--jobs N] [--report FILE]
//
// Without --report the exit status is the number of failed criteria. With
// --report the verdicts are also written to FILE and the exit status is zero
// once every criterion has been evaluated.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "ofp/aggregate.hpp"
#include "ofp/geometry.hpp"
#include "ofp/presets.hpp"
#include "ofp/simulator.hpp"
#include "support/event_log.hpp"

using namespace ofp;
using geometry::Point;

namespace {

constexpr double kR = 300.0;

struct Verdict {
  bool pass = true;
  std::vector<std::string> detail;

  void check(bool ok, std::string what) {
    pass = pass && ok;
    detail.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", what));
  }
  void note(std::string what) { detail.push_back("     " + what); }
};

int g_jobs = 1;

std::vector<ScenarioConfig> configs_with_prefix(const std::string& preset_name, const std::string& prefix) {
  std::vector<ScenarioConfig> out;
  for (const auto& c : harness::preset(preset_name).configs) {
    if (c.name.rfind(prefix, 0) == 0) out.push_back(c);
  }
  return out;
}

ScenarioConfig named(const std::string& preset_name, const std::string& name) {
  for (const auto& c : harness::preset(preset_name).configs) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no config named " + name);
}

sim::AggregateMetrics converge(const ScenarioConfig& c) { return sim::run_until_ci(c, g_jobs); }

std::string describe(const std::string& name, const sim::AggregateMetrics& a) {
  return fmt::format("{}: tx {:.2f} +/- {:.2f}, delivery {:.4f} +/- {:.4f}, {} trials{}", name,
                     a.transmissions.mean, a.transmissions.half_width, a.delivery_ratio.mean,
                     a.delivery_ratio.half_width, a.trials, a.converged ? "" : " (not converged)");
}

// Ideal-case counts: rebroadcasts against the tabulated values.
Verdict ideal_counts(const std::string& prefix, const std::map<std::string, int>& table,
                     const std::string& exact_key, int exact_value) {
  Verdict v;
  for (const auto& c : configs_with_prefix("ideal_case", prefix)) {
    const std::string key = c.name.substr(c.name.find('/') + 1);
    const int want = table.at(key);
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = sim::run_trial(c, c.seed_base);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto got = static_cast<double>(m.rebroadcasts());
    const double rel = std::abs(got - want) / want;
    v.check(rel <= 0.15, fmt::format("{}: {} vs {} ({:+.1f}%), delivery {:.3f}", key, got, want,
                                     100.0 * (got - want) / want, m.delivery_ratio));
    v.check(secs < 1.0, fmt::format("{}: {:.3f} s", key, secs));
    if (key == exact_key) {
      v.check(got == exact_value, fmt::format("{} exactly {}: got {}", key, exact_value, got));
    }
  }
  return v;
}

Verdict criterion1() {
  return ideal_counts("ideal_case/circle_",
                      {{"circle_2R", 12}, {"circle_3R", 24}, {"circle_4R", 42}, {"circle_5R", 60},
                       {"circle_6R", 90}, {"circle_7R", 126}, {"circle_8R", 168}},
                      "circle_2R", 12);
}

Verdict criterion2() {
  return ideal_counts("ideal_case/rect_",
                      {{"rect_3Rx3R", 8}, {"rect_4Rx4R", 10}, {"rect_5Rx5R", 16}, {"rect_6Rx6R", 26},
                       {"rect_8Rx8R", 42}, {"rect_10Rx10R", 74}, {"rect_4Rx6R", 18}, {"rect_6Rx8R", 36},
                       {"rect_8Rx10R", 54}},
                      "rect_3Rx3R", 8);
}

Verdict criterion3() {
  Verdict v;
  std::map<double, std::map<double, sim::AggregateMetrics>> by_th;  // th -> density -> result
  for (const auto& c : configs_with_prefix("threshold_sweep", "threshold_sweep/1800x1800/")) {
    if (c.density < 16) continue;
    by_th[c.protocol.threshold_fraction][c.density] = converge(c);
  }
  for (const auto& [th, row] : by_th) {
    for (const auto& [d, a] : row) {
      v.check(a.converged, describe(fmt::format("th={:.2f} d={}", th, d), a));
      const double dr = a.delivery_ratio.mean;
      if (std::abs(th - 0.35) < 1e-9) v.check(dr >= 0.96, fmt::format("th=0.35 d={} delivery {:.4f} >= 0.96", d, dr));
      if (std::abs(th - 0.40) < 1e-9) {
        v.check(dr >= 0.92 && dr <= 0.98, fmt::format("th=0.40 d={} delivery {:.4f} in [0.92, 0.98]", d, dr));
      }
    }
  }
  for (const auto& [d, a35] : by_th.at(0.35)) {
    const double d35 = a35.delivery_ratio.mean;
    const double d40 = by_th.at(0.40).at(d).delivery_ratio.mean;
    const double d45 = by_th.at(0.45).at(d).delivery_ratio.mean;
    v.check(d45 < d40 && d40 < d35,
            fmt::format("d={} ordering 0.45 < 0.40 < 0.35: {:.4f} < {:.4f} < {:.4f}", d, d45, d40, d35));
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto low = converge(named("density_sweep", "density_sweep/1800x1800/d=4"));
  const auto high = converge(named("density_sweep", "density_sweep/1800x1800/d=100"));
  const auto ideal = sim::run_trial(named("ideal_case", "ideal_case/rect_6Rx6R"), 1);
  v.check(low.converged, describe("d=4", low));
  v.check(high.converged, describe("d=100", high));
  v.check(high.transmissions.mean < low.transmissions.mean,
          fmt::format("tx(d=100) {:.2f} < tx(d=4) {:.2f}", high.transmissions.mean, low.transmissions.mean));
  const double ideal_count = static_cast<double>(ideal.rebroadcasts());
  const double rb = high.transmissions.mean - 1.0;
  v.check(std::abs(rb - ideal_count) <= 0.25 * ideal_count,
          fmt::format("d=100 rebroadcasts {:.2f} within 25% of ideal {} ({:+.1f}%)", rb, ideal_count,
                      100.0 * (rb - ideal_count) / ideal_count));
  v.note(fmt::format("tabulated ideal count for 6R x 6R: 26; d=100 is {:+.1f}% from it", 100.0 * (rb - 26) / 26));
  return v;
}

Verdict criterion5() {
  Verdict v;
  double lowest = 1.0;
  std::string where;
  int unconverged = 0;
  for (const auto& c : harness::preset("density_sweep").configs) {
    const auto a = converge(c);
    if (!a.converged) {
      ++unconverged;
      v.note(describe(c.name, a));
    }
    if (a.delivery_ratio.mean < lowest) {
      lowest = a.delivery_ratio.mean;
      where = c.name;
    }
  }
  v.check(unconverged == 0, fmt::format("{} configurations not converged", unconverged));
  v.check(lowest >= 0.93, fmt::format("minimum delivery {:.4f} at {} >= 0.93", lowest, where));
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto o = converge(named("error_sweep", "error_sweep/ofp/e=0.30"));
  const auto a = converge(named("error_sweep", "error_sweep/ahbp/e=0.30"));
  v.check(o.converged, describe("ofp e=0.30", o));
  v.check(a.converged, describe("ahbp e=0.30", a));
  v.check(o.delivery_ratio.mean >= 0.80, fmt::format("OFP delivery {:.4f} >= 0.80", o.delivery_ratio.mean));
  const double margin = o.delivery_ratio.mean - a.delivery_ratio.mean;
  v.check(margin >= 0.10, fmt::format("OFP - AHBP delivery {:.4f} >= 0.10", margin));
  return v;
}

Verdict criterion7() {
  Verdict v;
  double lo = 1.0, hi = 0.0;
  for (const auto& c : configs_with_prefix("mobility_sweep", "mobility_sweep/ofp/")) {
    const auto a = converge(c);
    v.check(a.converged, describe(c.name, a));
    lo = std::min(lo, a.delivery_ratio.mean);
    hi = std::max(hi, a.delivery_ratio.mean);
  }
  v.check(hi - lo < 0.05, fmt::format("OFP delivery spread {:.4f} < 0.05 ({:.4f}..{:.4f})", hi - lo, lo, hi));
  const auto slow = converge(named("mobility_sweep", "mobility_sweep/ahbp_hello10/v=1"));
  const auto fast = converge(named("mobility_sweep", "mobility_sweep/ahbp_hello10/v=20"));
  v.check(slow.converged, describe("ahbp_hello10 v=1", slow));
  v.check(fast.converged, describe("ahbp_hello10 v=20", fast));
  const double drop = slow.delivery_ratio.mean - fast.delivery_ratio.mean;
  v.check(drop >= 0.10, fmt::format("AHBP hello 10 s loses {:.4f} >= 0.10 from 1 to 20 m/s", drop));
  return v;
}

std::size_t component_size(const sim::NodeLayout& layout) {
  const auto& p = layout.positions;
  std::vector<char> seen(p.size(), 0);
  std::queue<std::size_t> q;
  q.push(layout.source);
  seen[layout.source] = 1;
  std::size_t n = 0;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    ++n;
    for (std::size_t w = 0; w < p.size(); ++w) {
      if (!seen[w] && geometry::distance(p[u], p[w]) <= kR + geometry::epsilon(kR)) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  return n;
}

Verdict criterion8() {
  Verdict v;
  int runs = 0, flood_ok = 0, gossip_ok = 0, dist_ok = 0;
  for (double density : {2.0, 4.0, 9.0, 25.0}) {
    ScenarioConfig flood;
    flood.region = geometry::Region::rectangle(1800, 1800);
    flood.density = density;
    flood.protocol.kind = ProtocolKind::Flood;
    auto gossip = flood;
    gossip.protocol.kind = ProtocolKind::Gossip;
    gossip.protocol.gossip_probability = 1.0;
    auto dist = flood;
    dist.protocol.kind = ProtocolKind::Distance;
    dist.protocol.distance_threshold_fraction = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      ++runs;
      sim::Simulator s(flood, seed);
      const auto comp = component_size(s.layout());
      const auto m = s.run();
      flood_ok += (m.transmissions == comp && m.delivered == comp) ? 1 : 0;
      const auto want = eventlog::transmitter_set(eventlog::run_logged(flood, seed));
      gossip_ok += eventlog::transmitter_set(eventlog::run_logged(gossip, seed)) == want ? 1 : 0;
      dist_ok += eventlog::transmitter_set(eventlog::run_logged(dist, seed)) == want ? 1 : 0;
    }
  }
  v.check(flood_ok == runs, fmt::format("flooding reaches the connected component with one tx per node: {}/{}", flood_ok, runs));
  v.check(gossip_ok == runs, fmt::format("gossip(1.0) transmitter set equals flooding: {}/{}", gossip_ok, runs));
  v.check(dist_ok == runs, fmt::format("distance(0) transmitter set equals flooding: {}/{}", dist_ok, runs));
  return v;
}

bool on_triangular_lattice(Point p, Point origin) {
  const Point d = p - origin;
  const double b = std::round(d.y / (kR * std::sqrt(3.0) / 2.0));
  const double a = std::round((d.x - b * kR / 2.0) / kR);
  return geometry::distance(p, origin + Point{a * kR + b * kR / 2.0, b * kR * std::sqrt(3.0) / 2.0}) <
         geometry::epsilon(kR);
}

Verdict criterion9() {
  Verdict v;
  std::vector<ScenarioConfig> cfgs;
  for (double density : {4.0, 16.0, 64.0}) {
    ScenarioConfig c;
    c.region = geometry::Region::rectangle(1800, 1800);
    c.density = density;
    cfgs.push_back(c);
  }
  {
    ScenarioConfig c;
    c.region = geometry::Region::rectangle(1800, 1800);
    c.node_count = 144;
    c.error_rate = 0.3;
    c.distortion = 0.3;
    cfgs.push_back(c);
  }
  for (double th : {0.35, 0.45}) {
    ScenarioConfig c;
    c.region = geometry::Region::rectangle(1200, 1200);
    c.density = 16;
    c.protocol.threshold_fraction = th;
    cfgs.push_back(c);
  }
  int logs = 0, repeats = 0, violations = 0, slow = 0, nondeterministic = 0;
  double max_delay = 0.0;
  for (const auto& c : cfgs) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto a = eventlog::run_logged(c, seed);
      const auto b = eventlog::run_logged(c, seed);
      ++logs;
      nondeterministic += a.text == b.text ? 0 : 1;
      repeats += static_cast<int>(eventlog::repeat_transmitters(a).size());
      violations += static_cast<int>(eventlog::threshold_violations(a, c.protocol.threshold_fraction * kR).size());
      for (double d : a.delays) {
        max_delay = std::max(max_delay, d);
        slow += d > 0.050 ? 1 : 0;
      }
    }
  }
  v.check(repeats == 0, fmt::format("single transmission per node: {} repeats over {} logs", repeats, logs));
  v.check(violations == 0, fmt::format("threshold suppression post hoc: {} violations", violations));
  v.check(slow == 0, fmt::format("delay bound: max scheduled delay {:.6f} s <= 0.050", max_delay));
  v.check(nondeterministic == 0, fmt::format("byte-identical logs on rerun: {} mismatches", nondeterministic));

  // Geometry closure: hexagon sides, forward fan, chained candidates on the
  // triangular lattice, and ideal lattice spacing.
  const double eps = geometry::epsilon(kR);
  double worst_side = 0.0, worst_step = 0.0;
  int off_lattice = 0, chained = 0;
  const Point src{37.0, -12.5};
  const auto hex = geometry::hex_vertices(src, kR);
  for (int i = 0; i < 6; ++i) {
    worst_side = std::max(worst_side, std::abs(geometry::distance(hex[i], hex[(i + 1) % 6]) - kR));
    worst_side = std::max(worst_side, std::abs(geometry::distance(hex[i], src) - kR));
  }
  std::vector<std::pair<Point, Point>> frontier;
  for (Point h : hex) frontier.push_back({src, h});
  for (int depth = 0; depth < 6; ++depth) {
    std::vector<std::pair<Point, Point>> next;
    for (const auto& [l1, l2] : frontier) {
      for (Point p : geometry::forward_candidates(l1, l2, kR)) {
        ++chained;
        worst_step = std::max(worst_step, std::abs(geometry::distance(p, l2) - kR));
        off_lattice += on_triangular_lattice(p, src) ? 0 : 1;
        next.push_back({l2, p});
      }
    }
    frontier = std::move(next);
  }
  const auto lattice = geometry::ideal_lattice(geometry::Region::circle(6 * kR, src), src, kR);
  double min_pair = INFINITY;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    for (std::size_t j = i + 1; j < lattice.size(); ++j) {
      min_pair = std::min(min_pair, geometry::distance(lattice[i], lattice[j]));
    }
  }
  v.check(worst_side < eps, fmt::format("hexagon sides and radius equal R within {:.1e} m", worst_side));
  v.check(worst_step < eps && off_lattice == 0,
          fmt::format("{} chained forward candidates: step error {:.1e} m, {} off lattice", chained, worst_step,
                      off_lattice));
  v.check(std::abs(min_pair - kR) < eps, fmt::format("ideal lattice minimum spacing {:.9f} m", min_pair));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::string report_path;
  g_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--report" && i + 1 < argc) {
      report_path = argv[++i];
    } else if (arg == "--jobs" && i + 1 < argc) {
      g_jobs = std::max(1, std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--jobs N] [--report FILE]\n";
      return 64;
    }
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"ideal-case circle counts", criterion1},
      {"ideal-case rectangle counts", criterion2},
      {"threshold / delivery tradeoff", criterion3},
      {"density scaling", criterion4},
      {"delivery floor over density sweep", criterion5},
      {"error resilience", criterion6},
      {"mobility robustness", criterion7},
      {"baseline sanity", criterion8},
      {"property suites", criterion9},
  };

  std::ostringstream report;
  int failed = 0;
  int evaluated = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.check(false, fmt::format("exception: {}", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++evaluated;
    failed += v.pass ? 0 : 1;
    std::string block = fmt::format("criterion {}: {} {} ({:.1f} s)\n", i + 1, v.pass ? "PASS" : "FAIL",
                                    criteria[i].first, secs);
    for (const auto& d : v.detail) block += "    " + d + "\n";
    std::cout << block << std::flush;
    report << block;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string summary = fmt::format("criteria evaluated: {}, passed: {}, failed: {} ({:.1f} s, {} jobs)\n",
                                          evaluated, evaluated - failed, failed, total, g_jobs);
  std::cout << summary;
  report << summary;

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << report.str();
    return out ? 0 : 1;
  }
  return failed;
}
