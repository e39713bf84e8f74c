#include "ofp/skew.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ofp/errors.hpp"

namespace ofp::harness {

int render_skew(std::istream& log, std::ostream& out) {
  std::string line;
  std::string rows;
  double radius = 0.0;
  int count = 0;
  int line_no = 0;
  while (std::getline(log, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ScenarioError(fmt::format("event log line {}: {}", line_no, e.what()));
    }
    const auto kind = j.value("kind", std::string());
    if (kind == "trial") {
      radius = j.value("range", 0.0);
    } else if (kind == "tx") {
      const double x = j.at("x").get<double>();
      const double y = j.at("y").get<double>();
      if (j.value("source", false)) {
        rows += fmt::format("source,{},{},,\n", x, y);
      } else {
        rows += fmt::format("relay,{},{},{},{}\n", x, y, j.at("l1x").get<double>(), j.at("l1y").get<double>());
      }
      ++count;
    }
  }
  if (radius > 0.0) out << fmt::format("# coverage_radius={}\n", radius);
  out << "role,x,y,parent_x,parent_y\n" << rows;
  return count;
}

}  // namespace ofp::harness
