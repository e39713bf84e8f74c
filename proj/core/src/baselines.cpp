#include "ofp/baselines.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ofp/errors.hpp"

namespace ofp::baselines {

void validate(const GossipParams& p) {
  if (!(p.probability >= 0.0 && p.probability <= 1.0)) {
    throw ArgumentError(fmt::format("gossip probability must lie in [0, 1], got {}", p.probability));
  }
}

void validate(const CounterParams& p) {
  if (p.threshold < 1) throw ArgumentError("counter threshold must be at least 1");
  if (!(p.assess_delay > 0.0)) throw ArgumentError("assessment delay must be positive");
}

void validate(const DistanceParams& p) {
  if (!(p.threshold >= 0.0)) throw ArgumentError("distance threshold must be non-negative");
  if (!(p.assess_delay > 0.0)) throw ArgumentError("assessment delay must be positive");
}

void validate(const AhbpParams& p) {
  if (!(p.hello_interval > 0.0)) throw ArgumentError("hello interval must be positive");
}

namespace {

// Uniform in (0, max].
double assessment_delay(double max, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return max * (1.0 - u(rng));
}

}  // namespace

Decision flood_on_receive(BaselineState& state) {
  ++state.copies;
  if (state.received) return {};
  state.received = true;
  state.transmitted = true;
  return {Action::Transmit};
}

Decision gossip_on_receive(BaselineState& state, const GossipParams& params, Rng& rng) {
  ++state.copies;
  if (state.received) return {};
  state.received = true;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < params.probability) {
    state.transmitted = true;
    return {Action::Transmit};
  }
  return {};
}

Decision counter_on_receive(BaselineState& state, const CounterParams& params, Rng& rng,
                            double now) {
  ++state.copies;
  if (state.received) return {};
  state.received = true;
  const double delay = assessment_delay(params.assess_delay, rng);
  state.pending_at = now + delay;
  return {Action::Schedule, delay};
}

Decision counter_on_timer(BaselineState& state, const CounterParams& params, double now) {
  if (!state.pending_at || *state.pending_at != now) {
    throw ConsistencyError("counter timer fired without a pending assessment");
  }
  state.pending_at.reset();
  if (state.transmitted || state.copies >= params.threshold) return {};
  state.transmitted = true;
  return {Action::Transmit};
}

Decision distance_on_receive(BaselineState& state, Point node_pos, Point transmitter_pos,
                             const DistanceParams& params, Rng& rng, double now) {
  ++state.copies;
  state.d_min = std::min(state.d_min, geometry::distance(node_pos, transmitter_pos));
  if (state.received) return {};
  state.received = true;
  const double delay = assessment_delay(params.assess_delay, rng);
  state.pending_at = now + delay;
  return {Action::Schedule, delay};
}

Decision distance_on_timer(BaselineState& state, const DistanceParams& params, double now) {
  if (!state.pending_at || *state.pending_at != now) {
    throw ConsistencyError("distance timer fired without a pending assessment");
  }
  state.pending_at.reset();
  if (state.transmitted || state.d_min < params.threshold) return {};
  state.transmitted = true;
  return {Action::Transmit};
}

void NeighborTable::update(HelloRecord record) {
  auto& slot = records_[record.neighbor];
  if (slot.neighbors == nullptr || record.timestamp >= slot.timestamp) slot = std::move(record);
}

std::vector<NodeId> NeighborTable::fresh_neighbors(double now, double horizon) const {
  std::vector<NodeId> out;
  for (const auto& [id, rec] : records_) {
    if (now - rec.timestamp <= horizon) out.push_back(id);
  }
  return out;
}

TwoHopView NeighborTable::view(double now, double horizon) const {
  TwoHopView v;
  for (const auto& [id, rec] : records_) {
    if (now - rec.timestamp > horizon) continue;
    v.one_hop.push_back(id);
    v.reach.emplace(id, rec.neighbors ? *rec.neighbors : std::vector<NodeId>{});
  }
  return v;
}

const HelloRecord* NeighborTable::find(NodeId neighbor) const {
  auto it = records_.find(neighbor);
  return it == records_.end() ? nullptr : &it->second;
}

std::vector<NodeId> ahbp_select_brgs(NodeId self, const TwoHopView& view,
                                     std::span<const NodeId> covered,
                                     std::span<const NodeId> excluded) {
  auto contains = [](std::span<const NodeId> ids, NodeId id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
  };
  const auto& one_hop = view.one_hop;
  auto is_one_hop = [&](NodeId id) { return std::binary_search(one_hop.begin(), one_hop.end(), id); };

  std::vector<NodeId> targets;
  for (const auto& [nbr, list] : view.reach) {
    for (NodeId t : list) {
      if (t == self || is_one_hop(t) || contains(covered, t)) continue;
      targets.push_back(t);
    }
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.empty()) return {};

  // Candidate -> indices of the targets it reaches.
  std::vector<std::pair<NodeId, std::vector<std::size_t>>> candidates;
  for (const auto& [nbr, list] : view.reach) {
    if (nbr == self || contains(excluded, nbr)) continue;
    std::vector<std::size_t> idx;
    for (NodeId t : list) {
      auto it = std::lower_bound(targets.begin(), targets.end(), t);
      if (it != targets.end() && *it == t) idx.push_back(static_cast<std::size_t>(it - targets.begin()));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (!idx.empty()) candidates.emplace_back(nbr, std::move(idx));
  }

  std::vector<char> done(targets.size(), 0);
  std::vector<char> chosen(candidates.size(), 0);
  std::size_t remaining = targets.size();
  std::vector<NodeId> out;
  while (remaining > 0) {
    std::size_t best = candidates.size();
    std::size_t best_gain = 0;
    // `candidates` is ordered by id (std::map), so strict > keeps the lowest id on ties.
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (chosen[c]) continue;
      std::size_t gain = 0;
      for (std::size_t t : candidates[c].second) gain += done[t] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best_gain == 0) break;
    chosen[best] = 1;
    out.push_back(candidates[best].first);
    for (std::size_t t : candidates[best].second) {
      if (!done[t]) {
        done[t] = 1;
        --remaining;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ofp::baselines
