#include "ofp/presets.hpp"

#include <fmt/format.h>

#include "ofp/errors.hpp"

namespace ofp::harness {

namespace {

constexpr double kRange = 300.0;

struct Size {
  double width;
  double height;
};

std::string size_label(Size s) { return fmt::format("{}x{}", s.width, s.height); }

ScenarioConfig base(std::string name, Size s) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.range = kRange;
  c.region = geometry::Region::rectangle(s.width, s.height);
  return c;
}

ScenarioConfig ofp(ScenarioConfig c, double threshold = 0.4) {
  c.protocol.kind = ProtocolKind::Ofp;
  c.protocol.threshold_fraction = threshold;
  return c;
}

ScenarioConfig ahbp(ScenarioConfig c, double hello_interval = 10.0) {
  c.protocol.kind = ProtocolKind::Ahbp;
  c.protocol.hello_interval = hello_interval;
  return c;
}

const std::vector<double> kDensities = {4, 6.25, 9, 16, 25, 36, 64, 100};

ExperimentPreset ideal_case() {
  ExperimentPreset p;
  p.name = "ideal_case";
  p.description = "OFP transmissions with a node on every strategic location";
  p.sweep = {"region"};
  p.fixed = {{"placement", "ideal_lattice"}, {"threshold", "0.4"}, {"range", "300"}};
  p.notes = {
      "Circles keep lattice points on the boundary; rectangles keep only interior points.",
      "Tabulated counts compare against rebroadcasts (transmissions minus the source's own).",
      "Rectangles labelled AxB are B wide and A tall when A < B."};
  for (int k = 2; k <= 8; ++k) {
    ScenarioConfig c = ofp(base(fmt::format("ideal_case/circle_{}R", k), {kRange, kRange}));
    c.region = geometry::Region::circle(k * kRange);
    c.placement = Placement::IdealLattice;
    c.lattice_boundary = geometry::Boundary::Closed;
    p.configs.push_back(c);
  }
  const std::vector<std::pair<int, int>> rects = {{3, 3},  {4, 4}, {5, 5}, {6, 6}, {8, 8},
                                                  {10, 10}, {4, 6}, {6, 8}, {8, 10}};
  for (auto [a, b] : rects) {
    ScenarioConfig c =
        ofp(base(fmt::format("ideal_case/rect_{}Rx{}R", a, b), {b * kRange, a * kRange}));
    c.placement = Placement::IdealLattice;
    c.lattice_boundary = geometry::Boundary::Open;
    p.configs.push_back(c);
  }
  return p;
}

ExperimentPreset threshold_sweep() {
  ExperimentPreset p;
  p.name = "threshold_sweep";
  p.description = "OFP transmissions and delivery for thresholds 0.35, 0.40, 0.45";
  p.sweep = {"region", "threshold", "density"};
  p.fixed = {{"mobility", "static"}, {"error_rate", "0"}, {"range", "300"}};
  for (Size s : {Size{1800, 1800}, Size{1200, 1200}}) {
    for (double th : {0.35, 0.40, 0.45}) {
      for (double d : kDensities) {
        ScenarioConfig c = ofp(base(fmt::format("threshold_sweep/{}/th={}/d={}", size_label(s), th, d), s), th);
        c.density = d;
        p.configs.push_back(c);
      }
    }
  }
  return p;
}

ExperimentPreset density_sweep(std::string name, std::string description, std::vector<Size> sizes) {
  ExperimentPreset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.sweep = {"region", "density"};
  p.fixed = {{"threshold", "0.4"}, {"mobility", "static"}, {"error_rate", "0"}, {"range", "300"}};
  for (Size s : sizes) {
    for (double d : kDensities) {
      ScenarioConfig c = ofp(base(fmt::format("{}/{}/d={}", p.name, size_label(s), d), s));
      c.density = d;
      p.configs.push_back(c);
    }
  }
  return p;
}

ExperimentPreset static_compare() {
  ExperimentPreset p;
  p.name = "static_compare";
  p.description = "OFP against AHBP-style relay selection in static networks";
  p.sweep = {"region", "density", "protocol"};
  p.fixed = {{"mobility", "static"}, {"error_rate", "0"}, {"hello_interval", "10"}};
  p.notes = {"ahbp rows are an AHBP-style greedy two-hop cover with lowest-id tie-breaking."};
  for (Size s : {Size{1200, 1200}, Size{1800, 1800}, Size{2400, 2400}}) {
    for (double d : {4.0, 6.25, 9.0, 16.0, 25.0}) {
      for (bool use_ahbp : {false, true}) {
        ScenarioConfig c = base(fmt::format("static_compare/{}/d={}/{}", size_label(s), d,
                                            use_ahbp ? "ahbp" : "ofp"),
                                s);
        c = use_ahbp ? ahbp(c) : ofp(c);
        c.density = d;
        p.configs.push_back(c);
      }
    }
  }
  return p;
}

ExperimentPreset mobility_sweep() {
  ExperimentPreset p;
  p.name = "mobility_sweep";
  p.description = "Delivery under random-walk mobility, OFP against AHBP-style";
  p.sweep = {"protocol", "mean_speed"};
  p.fixed = {{"region", "1800x1800"}, {"nodes", "144"}, {"mobility", "random_walk"}};
  p.notes = {
      "The accompanying text names a 2400 m x 2400 m network while the caption gives "
      "1800 m x 1800 m with 144 nodes; this preset uses 1800 m x 1800 m (density 4).",
      "Random walk legs last 10 s with speed uniform in [0.5, 1.5] x mean; zero pause."};
  struct Variant {
    const char* label;
    ProtocolKind kind;
    double hello;
  };
  for (Variant v : {Variant{"ofp", ProtocolKind::Ofp, 10.0}, Variant{"ahbp_hello10", ProtocolKind::Ahbp, 10.0},
                    Variant{"ahbp_hello5", ProtocolKind::Ahbp, 5.0}}) {
    for (double speed : {1.0, 2.0, 5.0, 10.0, 15.0, 20.0}) {
      ScenarioConfig c = base(fmt::format("mobility_sweep/{}/v={}", v.label, speed), {1800, 1800});
      c = v.kind == ProtocolKind::Ahbp ? ahbp(c, v.hello) : ofp(c);
      c.node_count = 144;
      c.mobility = sim::MobilityKind::RandomWalk;
      c.mean_speed = speed;
      c.broadcast_time = 20.0;  // same start for every protocol, after two 10 s hello rounds
      p.configs.push_back(c);
    }
  }
  return p;
}

ExperimentPreset error_sweep() {
  ExperimentPreset p;
  p.name = "error_sweep";
  p.description = "Delivery under uniform transmission errors, OFP against AHBP-style";
  p.sweep = {"protocol", "error_rate"};
  p.fixed = {{"region", "1800x1800"}, {"nodes", "144"}, {"mobility", "static"}};
  for (bool use_ahbp : {false, true}) {
    for (int i = 0; i <= 6; ++i) {
      const double e = 0.05 * i;
      ScenarioConfig c =
          base(fmt::format("error_sweep/{}/e={:.2f}", use_ahbp ? "ahbp" : "ofp", e), {1800, 1800});
      c = use_ahbp ? ahbp(c) : ofp(c);
      c.node_count = 144;
      c.error_rate = e;
      p.configs.push_back(c);
    }
  }
  return p;
}

ExperimentPreset distortion_sweep() {
  ExperimentPreset p;
  p.name = "distortion_sweep";
  p.description = "Non-circular coverage: per-sector ranges uniform in [(1 - distortion) R, R]";
  p.sweep = {"region", "density", "protocol", "distortion"};
  p.fixed = {{"mobility", "static"}, {"sectors", "12"}, {"error_rate", "0"}};
  p.notes = {"distortion = 1 - D, where D is the lower range bound as a fraction of R."};
  auto add = [&p](Size s, double density, bool use_ahbp) {
    for (int i = 0; i <= 5; ++i) {
      const double dist = 0.1 * i;
      ScenarioConfig c = base(fmt::format("distortion_sweep/{}/d={}/{}/dist={:.1f}", size_label(s), density,
                                          use_ahbp ? "ahbp" : "ofp", dist),
                              s);
      c = use_ahbp ? ahbp(c) : ofp(c);
      c.density = density;
      c.distortion = dist;
      p.configs.push_back(c);
    }
  };
  for (double d : {4.0, 6.25, 9.0, 16.0}) add({1800, 1800}, d, false);
  add({1800, 1800}, 6.25, true);
  add({2400, 2400}, 6.25, false);
  add({2400, 2400}, 6.25, true);
  return p;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"ideal_case",     "threshold_sweep", "density_sweep", "retransmit_fraction",
          "static_compare", "mobility_sweep",  "error_sweep",   "distortion_sweep"};
}

ExperimentPreset preset(std::string_view name) {
  if (name == "ideal_case") return ideal_case();
  if (name == "threshold_sweep") return threshold_sweep();
  if (name == "density_sweep") {
    return density_sweep("density_sweep", "OFP transmissions across region sizes and densities",
                         {{900, 900}, {1200, 1200}, {1800, 1800}, {2400, 1800}, {2400, 2400}, {3000, 3000}});
  }
  if (name == "retransmit_fraction") {
    return density_sweep("retransmit_fraction", "Share of nodes that rebroadcast, by size and density",
                         {{1200, 1200}, {1800, 1800}, {2400, 2400}, {3000, 3000}});
  }
  if (name == "static_compare") return static_compare();
  if (name == "mobility_sweep") return mobility_sweep();
  if (name == "error_sweep") return error_sweep();
  if (name == "distortion_sweep") return distortion_sweep();
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ScenarioError(fmt::format("unknown preset '{}'; known presets: {}", name, known));
}

}  // namespace ofp::harness
