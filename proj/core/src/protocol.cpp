#include "ofp/protocol.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ofp/errors.hpp"

namespace ofp::protocol {

void OfpParams::validate() const {
  if (!(range > 0.0)) throw ArgumentError(fmt::format("range must be positive, got {}", range));
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw ArgumentError(
        fmt::format("threshold fraction must lie in (0, 1), got {}", threshold_fraction));
  }
  if (!(max_delay > 0.0)) {
    throw ArgumentError(fmt::format("max delay must be positive, got {}", max_delay));
  }
}

const char* to_string(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::AlreadyTransmitted: return "already_transmitted";
    case DiscardReason::TooClose: return "too_close";
    case DiscardReason::SoleNeighbor: return "sole_neighbor";
    case DiscardReason::AlreadyPending: return "already_pending";
    case DiscardReason::SelfEcho: return "self_echo";
    case DiscardReason::HeardAgain: return "heard_again";
    case DiscardReason::AlreadyDropped: return "already_dropped";
  }
  return "unknown";
}

double compute_delay(double distance_to_strategic, const OfpParams& params) {
  const double l = std::max(distance_to_strategic, 0.0);
  return params.max_delay * std::min(l / params.range, 1.0);
}

BroadcastPacket originate(NodePacketState& state, PacketId id, Point source_pos,
                          std::uint32_t payload_size) {
  state.received = true;
  state.transmitted = true;
  state.d_min = 0.0;
  state.pending_at.reset();
  state.pending_header.reset();
  return BroadcastPacket{id, source_pos, source_pos, payload_size};
}

ReceiveDecision on_receive(NodePacketState& state, const BroadcastPacket& packet, NodeId self,
                           Point node_pos, const OfpParams& params, double now,
                           std::optional<std::size_t> neighbor_count) {
  if (packet.id.origin == self) return Discard{DiscardReason::SelfEcho};

  state.received = true;
  state.d_min = std::min(state.d_min, geometry::distance(node_pos, packet.l2));

  if (state.transmitted) return Discard{DiscardReason::AlreadyTransmitted};
  if (state.pending_at) state.heard_while_pending = true;
  if (state.d_min < params.threshold()) return Discard{DiscardReason::TooClose};
  if (state.dropped) return Discard{DiscardReason::AlreadyDropped};
  if (params.neighbor_count_discard && neighbor_count && *neighbor_count <= 1) {
    return Discard{DiscardReason::SoleNeighbor};
  }
  // A duplicate while waiting only lowers d_min; the timer re-checks it.
  if (state.pending_at) return Discard{DiscardReason::AlreadyPending};

  const bool from_source = packet.from_source(params.range);
  const StrategicCandidate candidate = geometry::nearest_strategic(
      node_pos, packet.l1, packet.l2, packet.l1, from_source, params.range);
  const double delay = compute_delay(candidate.distance_from_node, params);
  state.pending_at = now + delay;
  state.pending_header = Header{packet.l1, packet.l2};
  return Schedule{delay, candidate};
}

TimerDecision on_timer(NodePacketState& state, const BroadcastPacket& packet_template,
                       Point node_pos, const OfpParams& params, double now) {
  if (!state.pending_at || !state.pending_header || !state.received) {
    throw ConsistencyError("timer fired without a pending rebroadcast");
  }
  if (*state.pending_at != now) {
    throw ConsistencyError(
        fmt::format("timer fired at {} but rebroadcast was due at {}", now, *state.pending_at));
  }
  const Header header = *state.pending_header;
  const bool heard_again = state.heard_while_pending;
  state.pending_at.reset();
  state.pending_header.reset();
  state.heard_while_pending = false;

  if (state.transmitted) return Discard{DiscardReason::AlreadyTransmitted};
  if (state.d_min < params.threshold()) {
    state.dropped = true;
    return Discard{DiscardReason::TooClose};
  }
  if (params.duplicate_discard && heard_again) {
    state.dropped = true;
    return Discard{DiscardReason::HeardAgain};
  }

  state.transmitted = true;
  state.d_min = 0.0;
  BroadcastPacket out = packet_template;
  out.l1 = header.l2;
  out.l2 = node_pos;
  return Transmit{out};
}

}  // namespace ofp::protocol
