#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <queue>
#include <span>
#include <vector>

#include "ofp/baselines.hpp"
#include "ofp/mobility.hpp"
#include "ofp/placement.hpp"
#include "ofp/protocol.hpp"
#include "ofp/radio.hpp"
#include "ofp/rng.hpp"
#include "ofp/scenario.hpp"

namespace ofp::sim {

/// Reception-after-transmission delay. Keeps cause ahead of effect in the
/// event order; there is no MAC or queueing model.
inline constexpr double kPropagationDelay = 1e-6;

enum class EventKind : std::uint8_t {
  Originate,
  Reception,
  Timer,
  HelloDue,
  HelloReception,
  MobilityTick,
};

/// Events run in (time, sequence) order; sequence is assigned when the event
/// is scheduled and is the only tie-break.
struct Event {
  double time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::Originate;
  NodeId node = 0;
  std::uint32_t ref = 0;  // frame or hello index

  bool operator>(const Event& o) const {
    return time != o.time ? time > o.time : sequence > o.sequence;
  }
};

struct TrialMetrics {
  std::uint64_t transmissions = 0;  // data transmissions, source included
  std::uint64_t delivered = 0;      // nodes holding the packet, source included
  std::uint64_t node_count = 0;
  double delivery_ratio = 0.0;
  double retransmit_fraction = 0.0;
  std::uint64_t control_packets = 0;  // hellos
  std::uint64_t control_bytes = 0;
  std::uint64_t header_bytes = 0;     // protocol header overhead over all data transmissions
  double broadcast_latency = 0.0;     // last first-delivery time minus origination time
  bool truncated = false;             // time cap hit with data events outstanding

  std::uint64_t rebroadcasts() const { return transmissions > 0 ? transmissions - 1 : 0; }
  friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

/// A transmitted data packet as seen on the air.
struct Frame {
  NodeId transmitter = 0;
  protocol::BroadcastPacket packet;
  std::vector<NodeId> relays;  // AHBP relay list, empty for other schemes
};

struct HelloFrame {
  NodeId sender = 0;
  geometry::Point position;
  std::shared_ptr<const std::vector<NodeId>> neighbors;
};

/// One broadcast from the source under the configured protocol. Optionally
/// writes a line-delimited JSON event log.
class Simulator {
public:
  Simulator(const ScenarioConfig& config, std::uint64_t seed, std::ostream* log = nullptr);
  ~Simulator();
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  /// Runs to completion and returns the trial's metrics.
  TrialMetrics run();
  /// Processes events with time <= t. Returns false once the trial is over.
  bool run_until(double t);

  double now() const { return now_; }
  const NodeLayout& layout() const { return layout_; }
  std::size_t node_count() const { return layout_.positions.size(); }
  geometry::Point position(NodeId node) const;
  const RadioModel& radio() const { return radio_; }
  const baselines::NeighborTable& neighbor_table(NodeId node) const { return tables_.at(node); }
  const protocol::NodePacketState& ofp_state(NodeId node) const { return ofp_states_.at(node); }
  const baselines::BaselineState& baseline_state(NodeId node) const { return base_states_.at(node); }
  std::span<const Frame> frames() const { return frames_; }
  TrialMetrics metrics() const;

private:
  void schedule(double time, EventKind kind, NodeId node, std::uint32_t ref = 0);
  bool process_next();
  void finish();

  void originate();
  void on_reception(NodeId node, std::uint32_t frame);
  void on_timer(NodeId node);
  void on_hello_due(NodeId node);
  void on_hello_reception(NodeId node, std::uint32_t hello);
  void on_mobility_tick();

  void transmit(NodeId node, protocol::BroadcastPacket packet, std::vector<NodeId> relays);
  void mark_delivered(NodeId node);
  std::vector<NodeId> ahbp_relays(NodeId node, const Frame* from) const;
  std::size_t neighbor_count(NodeId node);
  std::span<const geometry::Point> positions_now();
  double query_slack() const;

  void log_line(const std::string& line);

  ScenarioConfig config_;
  std::uint64_t seed_;
  std::ostream* log_;

  NodeLayout layout_;
  RadioModel radio_;
  SpatialGrid grid_;
  MobilityModel mobility_;
  std::vector<Walker> walkers_;
  std::vector<Rng> mobility_rngs_;
  std::vector<Rng> channel_rngs_;
  std::vector<Rng> protocol_rngs_;
  double last_tick_ = 0.0;
  std::vector<geometry::Point> interpolated_;
  double interpolated_at_ = -1.0;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t next_sequence_ = 0;
  double now_ = 0.0;
  std::uint64_t data_events_pending_ = 0;
  bool originated_ = false;
  bool finished_ = false;

  PacketId packet_id_;
  protocol::OfpParams ofp_;
  std::vector<protocol::NodePacketState> ofp_states_;
  std::vector<baselines::BaselineState> base_states_;
  std::vector<baselines::NeighborTable> tables_;
  std::vector<Frame> frames_;
  std::vector<HelloFrame> hellos_;

  std::vector<char> delivered_;
  TrialMetrics metrics_;
  double origin_time_ = 0.0;
  double last_delivery_ = 0.0;
};

/// Convenience wrapper: build, run, return metrics.
TrialMetrics run_trial(const ScenarioConfig& config, std::uint64_t seed,
                       std::ostream* log = nullptr);

}  // namespace ofp::sim
