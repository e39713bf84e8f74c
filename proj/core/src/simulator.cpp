#include "ofp/simulator.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "ofp/errors.hpp"

namespace ofp::sim {

using geometry::Point;

namespace {

constexpr std::uint32_t kBroadcastSequence = 1;

std::string point_fields(const char* px, const char* py, Point p) {
  return fmt::format("\"{}\":{},\"{}\":{}", px, p.x, py, p.y);
}

}  // namespace

Simulator::Simulator(const ScenarioConfig& config, std::uint64_t seed, std::ostream* log)
    : config_(config), seed_(seed), log_(log) {
  config_.validate();

  if (config_.placement == Placement::IdealLattice) {
    layout_ = place_ideal(config_.region, config_.range, config_.lattice_boundary);
  } else {
    Rng placement = make_rng(seed_, Stream::Placement);
    const std::uint32_t n = config_.node_count > 0
                                ? config_.node_count
                                : nodes_for_density(config_.region, config_.density, config_.range);
    layout_ = place_nodes(config_.region, n, placement);
  }
  const std::size_t n = layout_.positions.size();

  radio_ = RadioModel(config_.range, config_.distortion, config_.sectors, config_.error_rate);
  Rng radio_rng = make_rng(seed_, Stream::Radio);
  radio_.sample_ranges(n, radio_rng);
  grid_ = SpatialGrid(layout_.positions, config_.range);

  mobility_ = config_.mobility_model();
  for (std::size_t i = 0; i < n; ++i) {
    mobility_rngs_.push_back(make_rng(seed_, Stream::Mobility, i));
    channel_rngs_.push_back(make_rng(seed_, Stream::Channel, i));
    protocol_rngs_.push_back(make_rng(seed_, Stream::Protocol, i));
  }
  walkers_ = init_walkers(mobility_, mobility_rngs_);

  packet_id_ = PacketId{layout_.source, kBroadcastSequence};
  ofp_ = config_.ofp_params();
  ofp_states_.resize(n);
  base_states_.resize(n);
  tables_.resize(n);
  delivered_.assign(n, 0);
  metrics_.node_count = n;

  if (log_) {
    log_line(fmt::format(
        "{{\"kind\":\"trial\",\"seed\":{},\"protocol\":\"{}\",\"range\":{},\"nodes\":{},"
        "\"source\":{}}}",
        seed_, to_string(config_.protocol.kind), config_.range, n, layout_.source));
  }

  origin_time_ = config_.resolved_broadcast_time();
  schedule(origin_time_, EventKind::Originate, layout_.source);
  ++data_events_pending_;
  if (config_.protocol.kind == ProtocolKind::Ahbp) {
    Rng hello_rng = make_rng(seed_, Stream::Hello);
    for (std::size_t i = 0; i < n; ++i) {
      schedule(uniform(hello_rng, 0.0, config_.protocol.hello_interval), EventKind::HelloDue,
               static_cast<NodeId>(i));
    }
  }
  if (mobility_.kind == MobilityKind::RandomWalk) {
    schedule(config_.mobility_tick, EventKind::MobilityTick, 0);
  }
}

Simulator::~Simulator() = default;

void Simulator::schedule(double time, EventKind kind, NodeId node, std::uint32_t ref) {
  queue_.push(Event{time, next_sequence_++, kind, node, ref});
}

void Simulator::log_line(const std::string& line) {
  if (log_) *log_ << line << '\n';
}

double Simulator::query_slack() const {
  return mobility_.max_speed() * config_.mobility_tick + geometry::epsilon(config_.range);
}

std::span<const Point> Simulator::positions_now() {
  if (mobility_.kind == MobilityKind::Static) return layout_.positions;
  if (interpolated_at_ != now_) {
    interpolated_.resize(layout_.positions.size());
    for (std::size_t i = 0; i < interpolated_.size(); ++i) {
      interpolated_[i] = position(static_cast<NodeId>(i));
    }
    interpolated_at_ = now_;
  }
  return interpolated_;
}

Point Simulator::position(NodeId node) const {
  const Point base = layout_.positions.at(node);
  if (mobility_.kind == MobilityKind::Static) return base;
  Point v = walkers_[node].velocity;
  Point p = base + (now_ - last_tick_) * v;
  reflect_into(mobility_.bounds, p, v);
  return p;
}

bool Simulator::run_until(double t) {
  while (!finished_ && !queue_.empty() && queue_.top().time <= t) process_next();
  return !finished_;
}

TrialMetrics Simulator::run() {
  while (!finished_) {
    if (queue_.empty()) {
      finish();
      break;
    }
    process_next();
  }
  return metrics();
}

bool Simulator::process_next() {
  const Event ev = queue_.top();
  if (ev.time > config_.time_cap) {
    metrics_.truncated = !originated_ || data_events_pending_ > 0;
    finish();
    return false;
  }
  queue_.pop();
  now_ = ev.time;
  switch (ev.kind) {
    case EventKind::Originate:
      --data_events_pending_;
      originate();
      break;
    case EventKind::Reception:
      --data_events_pending_;
      on_reception(ev.node, ev.ref);
      break;
    case EventKind::Timer:
      --data_events_pending_;
      on_timer(ev.node);
      break;
    case EventKind::HelloDue: on_hello_due(ev.node); break;
    case EventKind::HelloReception: on_hello_reception(ev.node, ev.ref); break;
    case EventKind::MobilityTick: on_mobility_tick(); break;
  }
  if (originated_ && data_events_pending_ == 0) finish();
  return !finished_;
}

void Simulator::finish() { finished_ = true; }

TrialMetrics Simulator::metrics() const {
  TrialMetrics m = metrics_;
  m.delivery_ratio = m.node_count ? static_cast<double>(m.delivered) / static_cast<double>(m.node_count) : 0.0;
  m.retransmit_fraction =
      m.node_count ? static_cast<double>(m.transmissions) / static_cast<double>(m.node_count) : 0.0;
  m.broadcast_latency = m.delivered > 0 ? last_delivery_ - origin_time_ : 0.0;
  return m;
}

void Simulator::mark_delivered(NodeId node) {
  if (delivered_[node]) return;
  delivered_[node] = 1;
  ++metrics_.delivered;
  last_delivery_ = now_;
}

void Simulator::originate() {
  originated_ = true;
  const NodeId src = layout_.source;
  mark_delivered(src);
  const Point pos = position(src);
  protocol::BroadcastPacket packet =
      protocol::originate(ofp_states_[src], packet_id_, pos, config_.payload_size);
  auto& base = base_states_[src];
  base.received = true;
  base.transmitted = true;
  base.d_min = 0.0;
  std::vector<NodeId> relays;
  if (config_.protocol.kind == ProtocolKind::Ahbp) relays = ahbp_relays(src, nullptr);
  transmit(src, packet, std::move(relays));
}

void Simulator::transmit(NodeId node, protocol::BroadcastPacket packet, std::vector<NodeId> relays) {
  ++metrics_.transmissions;
  switch (config_.protocol.kind) {
    case ProtocolKind::Ofp:
    case ProtocolKind::Distance: metrics_.header_bytes += protocol::kHeaderOverheadBytes; break;
    case ProtocolKind::Ahbp: metrics_.header_bytes += baselines::ahbp_header_bytes(relays.size()); break;
    default: break;
  }
  const auto frame_index = static_cast<std::uint32_t>(frames_.size());
  const Point pos = packet.l2;
  if (log_) {
    std::string relay_list;
    for (std::size_t i = 0; i < relays.size(); ++i) {
      relay_list += (i ? "," : "") + std::to_string(relays[i]);
    }
    log_line(fmt::format("{{\"t\":{},\"kind\":\"tx\",\"node\":{},\"pkt\":\"{}:{}\",{},{},\"source\":{},"
                         "\"relays\":[{}]}}",
                         now_, node, packet.id.origin, packet.id.sequence,
                         point_fields("x", "y", pos), point_fields("l1x", "l1y", packet.l1),
                         node == layout_.source ? "true" : "false", relay_list));
  }
  frames_.push_back(Frame{node, packet, std::move(relays)});
  const auto receivers =
      deliver(node, pos, positions_now(), radio_, channel_rngs_[node], grid_, query_slack());
  for (NodeId r : receivers) {
    schedule(now_ + kPropagationDelay, EventKind::Reception, r, frame_index);
    ++data_events_pending_;
  }
}

void Simulator::on_reception(NodeId node, std::uint32_t frame_index) {
  const Frame& frame = frames_[frame_index];
  const Point pos = position(node);
  const Point tx_pos = frame.packet.l2;
  if (log_) {
    log_line(fmt::format("{{\"t\":{},\"kind\":\"rx\",\"node\":{},\"from\":{},{},{}}}", now_, node,
                         frame.transmitter, point_fields("x", "y", pos),
                         point_fields("tx_x", "tx_y", tx_pos)));
  }
  if (node != layout_.source) mark_delivered(node);

  auto& base = base_states_[node];
  auto& rng = protocol_rngs_[node];
  auto relay_packet = [&] {
    protocol::BroadcastPacket p = frame.packet;
    p.l1 = tx_pos;
    p.l2 = pos;
    return p;
  };

  switch (config_.protocol.kind) {
    case ProtocolKind::Ofp: {
      std::optional<std::size_t> neighbors;
      if (ofp_.neighbor_count_discard) neighbors = neighbor_count(node);
      const auto decision =
          protocol::on_receive(ofp_states_[node], frame.packet, node, pos, ofp_, now_, neighbors);
      if (const auto* s = std::get_if<protocol::Schedule>(&decision)) {
        schedule(*ofp_states_[node].pending_at, EventKind::Timer, node);
        ++data_events_pending_;
        if (log_) {
          log_line(fmt::format("{{\"t\":{},\"kind\":\"schedule\",\"node\":{},\"delay\":{},\"l\":{},{}}}",
                               now_, node, s->delay, s->candidate.distance_from_node,
                               point_fields("cx", "cy", s->candidate.location)));
        }
      } else if (log_) {
        log_line(fmt::format("{{\"t\":{},\"kind\":\"discard\",\"node\":{},\"reason\":\"{}\"}}", now_,
                             node, protocol::to_string(std::get<protocol::Discard>(decision).reason)));
      }
      break;
    }
    case ProtocolKind::Flood: {
      if (baselines::flood_on_receive(base).action == baselines::Action::Transmit) {
        transmit(node, relay_packet(), {});
      }
      break;
    }
    case ProtocolKind::Gossip: {
      const baselines::GossipParams params{config_.protocol.gossip_probability};
      if (baselines::gossip_on_receive(base, params, rng).action == baselines::Action::Transmit) {
        transmit(node, relay_packet(), {});
      }
      break;
    }
    case ProtocolKind::Counter: {
      const baselines::CounterParams params{config_.protocol.counter_threshold,
                                            config_.protocol.assess_delay};
      const auto d = baselines::counter_on_receive(base, params, rng, now_);
      if (d.action == baselines::Action::Schedule) {
        schedule(*base.pending_at, EventKind::Timer, node, frame_index);
        ++data_events_pending_;
      }
      break;
    }
    case ProtocolKind::Distance: {
      const baselines::DistanceParams params{config_.protocol.distance_threshold_fraction * config_.range,
                                             config_.protocol.assess_delay};
      const auto d = baselines::distance_on_receive(base, pos, tx_pos, params, rng, now_);
      if (d.action == baselines::Action::Schedule) {
        schedule(*base.pending_at, EventKind::Timer, node, frame_index);
        ++data_events_pending_;
      }
      break;
    }
    case ProtocolKind::Ahbp: {
      // Only the first copy is acted on; a later copy naming this node as a
      // relay is a duplicate like any other.
      const bool first = !base.received;
      ++base.copies;
      base.received = true;
      if (!first || base.transmitted) break;
      if (!std::binary_search(frame.relays.begin(), frame.relays.end(), node)) break;
      base.transmitted = true;
      auto relays = ahbp_relays(node, &frame);
      transmit(node, relay_packet(), std::move(relays));
      break;
    }
  }
}

void Simulator::on_timer(NodeId node) {
  const Point pos = position(node);
  switch (config_.protocol.kind) {
    case ProtocolKind::Ofp: {
      protocol::BroadcastPacket templ{packet_id_, {}, {}, config_.payload_size};
      const auto decision = protocol::on_timer(ofp_states_[node], templ, pos, ofp_, now_);
      if (const auto* t = std::get_if<protocol::Transmit>(&decision)) {
        transmit(node, t->packet, {});
      } else if (log_) {
        log_line(fmt::format("{{\"t\":{},\"kind\":\"suppress\",\"node\":{},\"reason\":\"{}\"}}", now_,
                             node, protocol::to_string(std::get<protocol::Discard>(decision).reason)));
      }
      break;
    }
    case ProtocolKind::Counter:
    case ProtocolKind::Distance: {
      auto& base = base_states_[node];
      baselines::Decision d;
      if (config_.protocol.kind == ProtocolKind::Counter) {
        d = baselines::counter_on_timer(
            base, {config_.protocol.counter_threshold, config_.protocol.assess_delay}, now_);
      } else {
        d = baselines::distance_on_timer(
            base,
            {config_.protocol.distance_threshold_fraction * config_.range, config_.protocol.assess_delay},
            now_);
      }
      if (d.action == baselines::Action::Transmit) {
        // L1 is not meaningful for these schemes; keep it at the node itself.
        transmit(node, protocol::BroadcastPacket{packet_id_, pos, pos, config_.payload_size}, {});
      }
      break;
    }
    default: throw ConsistencyError("timer event for a protocol without timers");
  }
}

std::vector<NodeId> Simulator::ahbp_relays(NodeId node, const Frame* from) const {
  const baselines::AhbpParams params{config_.protocol.hello_interval};
  const auto view = tables_[node].view(now_, params.stale_horizon());
  std::vector<NodeId> covered;
  std::vector<NodeId> excluded;
  if (from != nullptr) {
    covered.push_back(from->transmitter);
    excluded.push_back(from->transmitter);
    if (const auto* rec = tables_[node].find(from->transmitter);
        rec != nullptr && rec->neighbors && now_ - rec->timestamp <= params.stale_horizon()) {
      covered.insert(covered.end(), rec->neighbors->begin(), rec->neighbors->end());
    }
  }
  return baselines::ahbp_select_brgs(node, view, covered, excluded);
}

std::size_t Simulator::neighbor_count(NodeId node) {
  const auto positions = positions_now();
  std::vector<NodeId> near;
  grid_.collect_near(positions[node], config_.range + query_slack(), near);
  std::size_t count = 0;
  for (NodeId id : near) {
    if (id != node && geometry::distance(positions[id], positions[node]) <=
                          config_.range + geometry::epsilon(config_.range)) {
      ++count;
    }
  }
  return count;
}

void Simulator::on_hello_due(NodeId node) {
  const baselines::AhbpParams params{config_.protocol.hello_interval};
  auto list = std::make_shared<const std::vector<NodeId>>(
      tables_[node].fresh_neighbors(now_, params.stale_horizon()));
  const Point pos = position(node);
  ++metrics_.control_packets;
  metrics_.control_bytes += baselines::hello_bytes(list->size());
  const auto index = static_cast<std::uint32_t>(hellos_.size());
  hellos_.push_back(HelloFrame{node, pos, std::move(list)});
  const auto receivers =
      deliver(node, pos, positions_now(), radio_, channel_rngs_[node], grid_, query_slack());
  for (NodeId r : receivers) schedule(now_ + kPropagationDelay, EventKind::HelloReception, r, index);
  schedule(now_ + params.hello_interval, EventKind::HelloDue, node);
}

void Simulator::on_hello_reception(NodeId node, std::uint32_t hello) {
  const HelloFrame& h = hellos_[hello];
  tables_[node].update(baselines::HelloRecord{h.sender, h.position, h.neighbors, now_});
}

void Simulator::on_mobility_tick() {
  const double dt = now_ - last_tick_;
  step_mobility(mobility_, layout_.positions, walkers_, dt, mobility_rngs_);
  last_tick_ = now_;
  interpolated_at_ = -1.0;
  grid_.rebuild(layout_.positions);
  schedule(now_ + config_.mobility_tick, EventKind::MobilityTick, 0);
}

TrialMetrics run_trial(const ScenarioConfig& config, std::uint64_t seed, std::ostream* log) {
  Simulator sim(config, seed, log);
  return sim.run();
}

}  // namespace ofp::sim
