#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>

#include "ofp/geometry.hpp"

namespace ofp {

using NodeId = std::uint32_t;

struct PacketId {
  NodeId origin = 0;
  std::uint32_t sequence = 0;
  friend auto operator<=>(const PacketId&, const PacketId&) = default;
};

}  // namespace ofp

namespace ofp::protocol {

using geometry::Point;
using geometry::StrategicCandidate;

/// Bytes OFP adds to every broadcast: origin (4), sequence (4), L1 (16), L2 (16).
inline constexpr std::size_t kHeaderOverheadBytes = 40;

struct BroadcastPacket {
  PacketId id;
  Point l1;  // where the transmitter received the packet from
  Point l2;  // the transmitter itself
  std::uint32_t payload_size = 0;

  /// True for the source's own transmission, which carries L1 == L2.
  bool from_source(double range) const {
    return geometry::distance(l1, l2) < geometry::epsilon(range);
  }
};

struct Header {
  Point l1;
  Point l2;
};

/// Per-node view of one broadcast.
struct NodePacketState {
  bool received = false;
  bool transmitted = false;
  double d_min = std::numeric_limits<double>::infinity();
  std::optional<double> pending_at;
  std::optional<Header> pending_header;
  bool heard_while_pending = false;
  bool dropped = false;  // a timer expiry decided against rebroadcasting
};

struct OfpParams {
  double range = 300.0;
  double threshold_fraction = 0.4;
  double max_delay = 0.050;
  bool neighbor_count_discard = false;
  bool duplicate_discard = false;  // drop at expiry if another copy arrived while waiting

  double threshold() const { return threshold_fraction * range; }
  /// Throws ArgumentError unless 0 < threshold_fraction < 1, max_delay > 0, range > 0.
  void validate() const;
};

enum class DiscardReason {
  AlreadyTransmitted,
  TooClose,
  SoleNeighbor,
  AlreadyPending,
  SelfEcho,
  HeardAgain,
  AlreadyDropped,
};

const char* to_string(DiscardReason reason);

struct Discard {
  DiscardReason reason;
};

struct Schedule {
  double delay = 0.0;
  StrategicCandidate candidate;
};

struct Transmit {
  BroadcastPacket packet;
};

using ReceiveDecision = std::variant<Discard, Schedule>;
using TimerDecision = std::variant<Discard, Transmit>;

/// Delay before a rebroadcast, linear in the distance to the strategic
/// location: max_delay * min(l / range, 1).
double compute_delay(double distance_to_strategic, const OfpParams& params);

/// Builds the source's packet (L1 = L2 = source position) and marks the
/// source's own state as transmitted.
BroadcastPacket originate(NodePacketState& state, PacketId id, Point source_pos,
                          std::uint32_t payload_size = 0);

/// Reception step. `self` guards against echoes of the node's own broadcast;
/// `neighbor_count` is only consulted when the sole-neighbor rule is enabled.
ReceiveDecision on_receive(NodePacketState& state, const BroadcastPacket& packet, NodeId self,
                           Point node_pos, const OfpParams& params, double now,
                           std::optional<std::size_t> neighbor_count = std::nullopt);

/// Timer expiry: re-check the threshold against the latest d_min and either
/// drop the packet or emit it with the header rewritten for this hop.
/// Throws ConsistencyError if no rebroadcast is pending at `now`.
TimerDecision on_timer(NodePacketState& state, const BroadcastPacket& packet_template,
                       Point node_pos, const OfpParams& params, double now);

}  // namespace ofp::protocol
