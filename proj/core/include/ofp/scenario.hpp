#pragma once

#include <cstdint>
#include <string>

#include "ofp/baselines.hpp"
#include "ofp/geometry.hpp"
#include "ofp/mobility.hpp"
#include "ofp/protocol.hpp"

namespace ofp {

enum class ProtocolKind { Ofp, Flood, Gossip, Counter, Distance, Ahbp };

const char* to_string(ProtocolKind kind);
ProtocolKind parse_protocol(const std::string& name);

/// Protocol choice plus the parameters of every scheme; only the ones for
/// `kind` are used.
struct ProtocolConfig {
  ProtocolKind kind = ProtocolKind::Ofp;
  double threshold_fraction = 0.4;
  double max_delay = 0.050;
  bool neighbor_count_discard = false;
  bool duplicate_discard = false;
  double gossip_probability = 0.65;
  int counter_threshold = 3;
  double assess_delay = 0.050;
  double distance_threshold_fraction = 0.4;
  double hello_interval = 10.0;

  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

enum class Placement { Uniform, IdealLattice };

struct CiPolicy {
  double target_halfwidth = 0.05;  // relative to the mean
  double confidence = 0.95;
  int min_trials = 10;
  int max_trials = 1000;

  friend bool operator==(const CiPolicy&, const CiPolicy&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  geometry::Region region = geometry::Region::rectangle(1800.0, 1800.0);
  double range = 300.0;

  Placement placement = Placement::Uniform;
  double density = 4.0;          // nodes per range x range square
  std::uint32_t node_count = 0;  // overrides density when nonzero
  geometry::Boundary lattice_boundary = geometry::Boundary::Closed;

  ProtocolConfig protocol;

  sim::MobilityKind mobility = sim::MobilityKind::Static;
  double mean_speed = 0.0;
  double leg_duration = 10.0;
  double mobility_tick = 0.1;

  double error_rate = 0.0;
  double distortion = 0.0;
  int sectors = 12;

  double broadcast_time = -1.0;  // negative: 2 hello intervals for AHBP, else 0
  double time_cap = 30.0;
  std::uint64_t seed_base = 1;
  std::uint32_t payload_size = 64;
  CiPolicy ci;

  /// Throws ArgumentError/ScenarioError on out-of-range parameters.
  void validate() const;
  std::uint32_t resolved_node_count() const;
  double resolved_broadcast_time() const;
  protocol::OfpParams ofp_params() const;
  sim::MobilityModel mobility_model() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

}  // namespace ofp
