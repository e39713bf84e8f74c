#include "ofp/config_io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "ofp/errors.hpp"

namespace ofp::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view value, std::string_view key) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ScenarioError(fmt::format("'{}': cannot parse '{}' as a number", key, value));
  }
  return out;
}

bool parse_bool(std::string_view value, std::string_view key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ScenarioError(fmt::format("'{}': expected true or false, got '{}'", key, value));
}

// Region pieces are collected first and assembled once all keys are read.
struct RegionParts {
  std::string shape = "rectangle";
  double width = 1800.0;
  double height = 1800.0;
  double radius = 900.0;
  double cx = 0.0;
  double cy = 0.0;
  std::optional<double> ox;  // rectangle lower-left corner, overrides the center
  std::optional<double> oy;
};

}  // namespace

std::string emit_config(const ScenarioConfig& c) {
  std::string out;
  auto line = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  if (c.name.find_first_of("#\n\r") != std::string::npos || trim(c.name) != c.name) {
    throw ArgumentError(fmt::format("scenario name '{}' cannot be written: no '#', line breaks or edge spaces", c.name));
  }
  line("name", c.name);
  if (c.region.is_circle()) {
    const auto& circle = c.region.as_circle();
    line("region.shape", "circle");
    line("region.radius", circle.radius);
    line("region.center_x", circle.center.x);
    line("region.center_y", circle.center.y);
  } else {
    const auto& rect = c.region.as_rectangle();
    line("region.shape", "rectangle");
    line("region.width", rect.width);
    line("region.height", rect.height);
    line("region.origin_x", rect.origin.x);
    line("region.origin_y", rect.origin.y);
  }
  line("radio.range", c.range);
  line("radio.error_rate", c.error_rate);
  line("radio.distortion", c.distortion);
  line("radio.sectors", c.sectors);
  line("nodes.placement", c.placement == Placement::IdealLattice ? "ideal_lattice" : "uniform");
  line("nodes.density", c.density);
  line("nodes.count", c.node_count);
  line("nodes.lattice_boundary", c.lattice_boundary == geometry::Boundary::Open ? "open" : "closed");
  line("protocol.kind", to_string(c.protocol.kind));
  line("protocol.threshold", c.protocol.threshold_fraction);
  line("protocol.max_delay", c.protocol.max_delay);
  line("protocol.neighbor_count_discard", c.protocol.neighbor_count_discard ? "true" : "false");
  line("protocol.duplicate_discard", c.protocol.duplicate_discard ? "true" : "false");
  line("protocol.gossip_p", c.protocol.gossip_probability);
  line("protocol.counter_threshold", c.protocol.counter_threshold);
  line("protocol.assess_delay", c.protocol.assess_delay);
  line("protocol.distance_threshold", c.protocol.distance_threshold_fraction);
  line("protocol.hello_interval", c.protocol.hello_interval);
  line("mobility.model", c.mobility == sim::MobilityKind::RandomWalk ? "random_walk" : "static");
  line("mobility.mean_speed", c.mean_speed);
  line("mobility.leg_duration", c.leg_duration);
  line("mobility.tick", c.mobility_tick);
  line("run.seed_base", c.seed_base);
  line("run.time_cap", c.time_cap);
  line("run.broadcast_time", c.broadcast_time);
  line("run.payload_size", c.payload_size);
  line("ci.target_halfwidth", c.ci.target_halfwidth);
  line("ci.confidence", c.ci.confidence);
  line("ci.min_trials", c.ci.min_trials);
  line("ci.max_trials", c.ci.max_trials);
  return out;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  RegionParts region;
  bool saw_radius = false;

  using Setter = std::function<void(std::string_view, std::string_view)>;
  auto num = [](double& field) -> Setter {
    return [&field](std::string_view v, std::string_view k) { field = parse_number<double>(v, k); };
  };
  auto integer = [](auto& field) -> Setter {
    return [&field](std::string_view v, std::string_view k) {
      field = parse_number<std::remove_reference_t<decltype(field)>>(v, k);
    };
  };

  const std::map<std::string, Setter, std::less<>> setters = {
      {"name", [&](std::string_view v, std::string_view) { c.name = std::string(v); }},
      {"region.shape",
       [&](std::string_view v, std::string_view k) {
         if (v != "circle" && v != "rectangle") {
           throw ScenarioError(fmt::format("'{}': expected circle or rectangle, got '{}'", k, v));
         }
         region.shape = std::string(v);
       }},
      {"region.width", num(region.width)},
      {"region.height", num(region.height)},
      {"region.radius",
       [&](std::string_view v, std::string_view k) {
         region.radius = parse_number<double>(v, k);
         saw_radius = true;
       }},
      {"region.center_x", num(region.cx)},
      {"region.center_y", num(region.cy)},
      {"region.origin_x",
       [&](std::string_view v, std::string_view k) { region.ox = parse_number<double>(v, k); }},
      {"region.origin_y",
       [&](std::string_view v, std::string_view k) { region.oy = parse_number<double>(v, k); }},
      {"radio.range", num(c.range)},
      {"radio.error_rate", num(c.error_rate)},
      {"radio.distortion", num(c.distortion)},
      {"radio.sectors", integer(c.sectors)},
      {"nodes.placement",
       [&](std::string_view v, std::string_view k) {
         if (v == "uniform") c.placement = Placement::Uniform;
         else if (v == "ideal_lattice") c.placement = Placement::IdealLattice;
         else throw ScenarioError(fmt::format("'{}': expected uniform or ideal_lattice, got '{}'", k, v));
       }},
      {"nodes.density", num(c.density)},
      {"nodes.count", integer(c.node_count)},
      {"nodes.lattice_boundary",
       [&](std::string_view v, std::string_view k) {
         if (v == "closed") c.lattice_boundary = geometry::Boundary::Closed;
         else if (v == "open") c.lattice_boundary = geometry::Boundary::Open;
         else throw ScenarioError(fmt::format("'{}': expected closed or open, got '{}'", k, v));
       }},
      {"protocol.kind",
       [&](std::string_view v, std::string_view) { c.protocol.kind = parse_protocol(std::string(v)); }},
      {"protocol.threshold", num(c.protocol.threshold_fraction)},
      {"protocol.max_delay", num(c.protocol.max_delay)},
      {"protocol.neighbor_count_discard",
       [&](std::string_view v, std::string_view k) { c.protocol.neighbor_count_discard = parse_bool(v, k); }},
      {"protocol.duplicate_discard",
       [&](std::string_view v, std::string_view k) { c.protocol.duplicate_discard = parse_bool(v, k); }},
      {"protocol.gossip_p", num(c.protocol.gossip_probability)},
      {"protocol.counter_threshold", integer(c.protocol.counter_threshold)},
      {"protocol.assess_delay", num(c.protocol.assess_delay)},
      {"protocol.distance_threshold", num(c.protocol.distance_threshold_fraction)},
      {"protocol.hello_interval", num(c.protocol.hello_interval)},
      {"mobility.model",
       [&](std::string_view v, std::string_view k) {
         if (v == "static") c.mobility = sim::MobilityKind::Static;
         else if (v == "random_walk") c.mobility = sim::MobilityKind::RandomWalk;
         else throw ScenarioError(fmt::format("'{}': expected static or random_walk, got '{}'", k, v));
       }},
      {"mobility.mean_speed", num(c.mean_speed)},
      {"mobility.leg_duration", num(c.leg_duration)},
      {"mobility.tick", num(c.mobility_tick)},
      {"run.seed_base", integer(c.seed_base)},
      {"run.time_cap", num(c.time_cap)},
      {"run.broadcast_time", num(c.broadcast_time)},
      {"run.payload_size", integer(c.payload_size)},
      {"ci.target_halfwidth", num(c.ci.target_halfwidth)},
      {"ci.confidence", num(c.ci.confidence)},
      {"ci.min_trials", integer(c.ci.min_trials)},
      {"ci.max_trials", integer(c.ci.max_trials)},
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ScenarioError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ScenarioError(fmt::format("line {}: unknown key '{}'", line_no, key));
    }
    try {
      it->second(value, key);
    } catch (const ScenarioError& e) {
      throw ScenarioError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }

  try {
    if (region.shape == "circle") {
      if (!saw_radius) throw ScenarioError("circle region needs region.radius");
      c.region = geometry::Region::circle(region.radius, {region.cx, region.cy});
    } else if (region.ox || region.oy) {
      c.region = geometry::Region(geometry::Rectangle{
          {region.ox.value_or(0.0), region.oy.value_or(0.0)}, region.width, region.height});
    } else {
      c.region = geometry::Region::rectangle(region.width, region.height, {region.cx, region.cy});
    }
    c.validate();
  } catch (const ArgumentError& e) {
    throw ScenarioError(fmt::format("invalid scenario: {}", e.what()));
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(fmt::format("cannot read config file '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ofp::harness
