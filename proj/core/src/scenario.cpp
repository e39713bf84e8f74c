#include "ofp/scenario.hpp"

#include <fmt/format.h>

#include "ofp/errors.hpp"
#include "ofp/placement.hpp"

namespace ofp {

const char* to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Ofp: return "ofp";
    case ProtocolKind::Flood: return "flood";
    case ProtocolKind::Gossip: return "gossip";
    case ProtocolKind::Counter: return "counter";
    case ProtocolKind::Distance: return "distance";
    case ProtocolKind::Ahbp: return "ahbp";
  }
  return "unknown";
}

ProtocolKind parse_protocol(const std::string& name) {
  for (auto k : {ProtocolKind::Ofp, ProtocolKind::Flood, ProtocolKind::Gossip,
                 ProtocolKind::Counter, ProtocolKind::Distance, ProtocolKind::Ahbp}) {
    if (name == to_string(k)) return k;
  }
  throw ScenarioError(fmt::format(
      "unknown protocol '{}' (expected ofp, flood, gossip, counter, distance or ahbp)", name));
}

protocol::OfpParams ScenarioConfig::ofp_params() const {
  return {range, protocol.threshold_fraction, protocol.max_delay, protocol.neighbor_count_discard,
          protocol.duplicate_discard};
}

sim::MobilityModel ScenarioConfig::mobility_model() const {
  return {mobility, mean_speed, leg_duration, region};
}

std::uint32_t ScenarioConfig::resolved_node_count() const {
  if (placement == Placement::IdealLattice) {
    return static_cast<std::uint32_t>(sim::place_ideal(region, range, lattice_boundary).positions.size());
  }
  if (node_count > 0) return node_count;
  return sim::nodes_for_density(region, density, range);
}

double ScenarioConfig::resolved_broadcast_time() const {
  if (broadcast_time >= 0.0) return broadcast_time;
  return protocol.kind == ProtocolKind::Ahbp ? 2.0 * protocol.hello_interval : 0.0;
}

void ScenarioConfig::validate() const {
  if (!(range > 0.0)) throw ArgumentError("range must be positive");
  if (placement == Placement::Uniform && node_count == 0 && !(density > 0.0)) {
    throw ArgumentError("density must be positive");
  }
  switch (protocol.kind) {
    case ProtocolKind::Ofp: ofp_params().validate(); break;
    case ProtocolKind::Gossip: baselines::validate(baselines::GossipParams{protocol.gossip_probability}); break;
    case ProtocolKind::Counter:
      baselines::validate(baselines::CounterParams{protocol.counter_threshold, protocol.assess_delay});
      break;
    case ProtocolKind::Distance:
      baselines::validate(baselines::DistanceParams{protocol.distance_threshold_fraction * range,
                                                    protocol.assess_delay});
      break;
    case ProtocolKind::Ahbp: baselines::validate(baselines::AhbpParams{protocol.hello_interval}); break;
    case ProtocolKind::Flood: break;
  }
  if (mobility == sim::MobilityKind::RandomWalk) {
    if (!(mean_speed >= 0.0)) throw ArgumentError("mean speed must be non-negative");
    if (!(leg_duration > 0.0)) throw ArgumentError("leg duration must be positive");
    if (!(mobility_tick > 0.0)) throw ArgumentError("mobility tick must be positive");
  }
  if (!(error_rate >= 0.0 && error_rate < 1.0)) throw ArgumentError("error rate must lie in [0, 1)");
  if (!(distortion >= 0.0 && distortion < 1.0)) throw ArgumentError("distortion must lie in [0, 1)");
  if (sectors < 1) throw ArgumentError("sector count must be at least 1");
  if (!(time_cap > 0.0)) throw ArgumentError("time cap must be positive");
  if (resolved_broadcast_time() >= time_cap) {
    throw ArgumentError("broadcast would start after the time cap");
  }
  if (!(ci.target_halfwidth > 0.0)) throw ArgumentError("CI target must be positive");
  if (!(ci.confidence > 0.0 && ci.confidence < 1.0)) throw ArgumentError("confidence must lie in (0, 1)");
  if (ci.min_trials < 2 || ci.max_trials < ci.min_trials) {
    throw ArgumentError("trial bounds must satisfy 2 <= min_trials <= max_trials");
  }
  if (resolved_node_count() < 2) throw ScenarioError("scenario has fewer than 2 nodes");
}

}  // namespace ofp
