#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ofp/geometry.hpp"
#include "ofp/protocol.hpp"

// Comparison broadcast schemes: blind flooding, gossip, counter-based,
// distance-based, and an AHBP-style relay-gateway protocol driven by hello
// messages. Each scheme is a small state machine over BaselineState; the
// simulator owns the event loop and calls these on receptions and timers.
namespace ofp::baselines {

using geometry::Point;

struct GossipParams {
  double probability = 0.65;
};

struct CounterParams {
  int threshold = 3;
  double assess_delay = 0.050;
};

struct DistanceParams {
  double threshold = 120.0;  // meters
  double assess_delay = 0.050;
};

struct AhbpParams {
  double hello_interval = 10.0;
  double stale_horizon() const { return 2.0 * hello_interval; }
};

void validate(const GossipParams& p);
void validate(const CounterParams& p);
void validate(const DistanceParams& p);
void validate(const AhbpParams& p);

struct BaselineState {
  bool received = false;
  bool transmitted = false;
  int copies = 0;
  double d_min = std::numeric_limits<double>::infinity();
  std::optional<double> pending_at;
};

enum class Action { Discard, Schedule, Transmit };

struct Decision {
  Action action = Action::Discard;
  double delay = 0.0;  // meaningful for Schedule

  friend bool operator==(const Decision&, const Decision&) = default;
};

using Rng = std::mt19937_64;

Decision flood_on_receive(BaselineState& state);

Decision gossip_on_receive(BaselineState& state, const GossipParams& params, Rng& rng);

Decision counter_on_receive(BaselineState& state, const CounterParams& params, Rng& rng,
                            double now);
Decision counter_on_timer(BaselineState& state, const CounterParams& params, double now);

/// `transmitter_pos` is the heard copy's L2 field.
Decision distance_on_receive(BaselineState& state, Point node_pos, Point transmitter_pos,
                             const DistanceParams& params, Rng& rng, double now);
Decision distance_on_timer(BaselineState& state, const DistanceParams& params, double now);

// ---------------------------------------------------------------------------
// AHBP-style relay selection

struct HelloRecord {
  NodeId neighbor = 0;
  Point position;  // sender position when the hello went out
  std::shared_ptr<const std::vector<NodeId>> neighbors;  // sender's 1-hop list, sorted
  double timestamp = 0.0;
};

/// Two-hop knowledge assembled from hello records.
struct TwoHopView {
  std::vector<NodeId> one_hop;                   // sorted
  std::map<NodeId, std::vector<NodeId>> reach;   // neighbor -> its reported neighbors
};

class NeighborTable {
public:
  void update(HelloRecord record);
  /// Records no older than `horizon` at time `now`.
  TwoHopView view(double now, double horizon) const;
  /// Sorted ids of neighbors with fresh records.
  std::vector<NodeId> fresh_neighbors(double now, double horizon) const;
  const HelloRecord* find(NodeId neighbor) const;
  std::size_t size() const { return records_.size(); }

private:
  std::map<NodeId, HelloRecord> records_;
};

/// Greedy cover of the two-hop neighborhood. Targets are every node reachable
/// through a one-hop neighbor, minus `self`, the one-hop set and `covered`.
/// Each round picks the neighbor (never one in `excluded`) covering the most
/// uncovered targets, ties to the lowest id, until all are covered or no
/// neighbor adds anything. Returns sorted relay ids.
std::vector<NodeId> ahbp_select_brgs(NodeId self, const TwoHopView& view,
                                     std::span<const NodeId> covered = {},
                                     std::span<const NodeId> excluded = {});

/// Bytes an AHBP header adds: relay count (4) plus 4 per listed relay.
inline std::size_t ahbp_header_bytes(std::size_t relays) { return 4 + 4 * relays; }

/// Hello wire size: id (4), position (16), count (4), 4 per listed neighbor.
inline std::size_t hello_bytes(std::size_t neighbors) { return 24 + 4 * neighbors; }

}  // namespace ofp::baselines
