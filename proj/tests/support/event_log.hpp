#pragma once

// Parsed view of a simulator event log, shared by the unit and acceptance
// tests for post-hoc checks.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ofp/geometry.hpp"
#include "ofp/scenario.hpp"
#include "ofp/simulator.hpp"

namespace ofp::eventlog {

struct TxRecord {
  double t = 0.0;
  std::uint32_t node = 0;
  geometry::Point pos;
  geometry::Point l1;
  bool source = false;
};

struct RxRecord {
  double t = 0.0;
  std::uint32_t node = 0;
  std::uint32_t from = 0;
  geometry::Point pos;
  geometry::Point tx_pos;
};

struct ParsedLog {
  std::string text;
  std::vector<TxRecord> tx;
  std::vector<RxRecord> rx;
  std::vector<double> delays;
  std::vector<double> ls;
};

inline ParsedLog parse_log(const std::string& text) {
  ParsedLog out;
  out.text = text;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto kind = j.value("kind", std::string());
    if (kind == "tx") {
      out.tx.push_back({j["t"], j["node"], {j["x"], j["y"]}, {j["l1x"], j["l1y"]}, j["source"]});
    } else if (kind == "rx") {
      out.rx.push_back({j["t"], j["node"], j["from"], {j["x"], j["y"]}, {j["tx_x"], j["tx_y"]}});
    } else if (kind == "schedule") {
      out.delays.push_back(j["delay"]);
      out.ls.push_back(j["l"]);
    }
  }
  return out;
}

inline ParsedLog run_logged(const ScenarioConfig& config, std::uint64_t seed) {
  std::ostringstream log;
  sim::run_trial(config, seed, &log);
  return parse_log(log.str());
}

/// Nodes that transmitted more than once.
inline std::vector<std::uint32_t> repeat_transmitters(const ParsedLog& log) {
  std::map<std::uint32_t, int> count;
  std::vector<std::uint32_t> out;
  for (const auto& t : log.tx) {
    if (++count[t.node] == 2) out.push_back(t.node);
  }
  return out;
}

/// Transmissions by a node that had earlier heard a transmitter closer than
/// `threshold`. Returns the offending node ids.
inline std::vector<std::uint32_t> threshold_violations(const ParsedLog& log, double threshold) {
  std::vector<std::uint32_t> bad;
  for (const auto& t : log.tx) {
    if (t.source) continue;
    for (const auto& r : log.rx) {
      if (r.node != t.node || r.t > t.t) continue;
      if (geometry::distance(r.tx_pos, t.pos) < threshold) {
        bad.push_back(t.node);
        break;
      }
    }
  }
  return bad;
}

inline std::set<std::uint32_t> transmitter_set(const ParsedLog& log) {
  std::set<std::uint32_t> s;
  for (const auto& t : log.tx) s.insert(t.node);
  return s;
}

}  // namespace ofp::eventlog
