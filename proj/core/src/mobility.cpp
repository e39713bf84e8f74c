#include "ofp/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ofp/errors.hpp"

namespace ofp::sim {

namespace {

void new_leg(const MobilityModel& model, Walker& w, Rng& rng) {
  const double heading = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double speed = uniform(rng, 0.5 * model.mean_speed, 1.5 * model.mean_speed);
  w.velocity = {speed * std::cos(heading), speed * std::sin(heading)};
  w.leg_left = model.leg_duration;
}

void check(const MobilityModel& model) {
  if (model.kind == MobilityKind::Static) return;
  if (!(model.mean_speed >= 0.0)) throw ArgumentError("mean speed must be non-negative");
  if (!(model.leg_duration > 0.0)) throw ArgumentError("leg duration must be positive");
}

}  // namespace

void reflect_into(const Region& region, Point& p, Point& velocity) {
  if (region.is_circle()) {
    const auto& c = region.as_circle();
    for (int guard = 0; guard < 8; ++guard) {
      const Point rel = p - c.center;
      const double r = geometry::norm(rel);
      if (r <= c.radius) return;
      const Point n = (1.0 / r) * rel;
      p = c.center + std::max(0.0, 2.0 * c.radius - r) * n;
      const double vn = velocity.x * n.x + velocity.y * n.y;
      velocity = velocity - (2.0 * vn) * n;
    }
    p = c.center;
    return;
  }
  const auto& rect = region.as_rectangle();
  auto fold = [](double& x, double& v, double lo, double hi) {
    for (int guard = 0; guard < 8 && (x < lo || x > hi); ++guard) {
      if (x < lo) x = 2.0 * lo - x;
      if (x > hi) x = 2.0 * hi - x;
      v = -v;
    }
    x = std::clamp(x, lo, hi);
  };
  fold(p.x, velocity.x, rect.origin.x, rect.origin.x + rect.width);
  fold(p.y, velocity.y, rect.origin.y, rect.origin.y + rect.height);
}

std::vector<Walker> init_walkers(const MobilityModel& model, std::span<Rng> rngs) {
  check(model);
  std::vector<Walker> out(rngs.size());
  if (model.kind == MobilityKind::Static) return out;
  for (std::size_t i = 0; i < rngs.size(); ++i) new_leg(model, out[i], rngs[i]);
  return out;
}

void step_mobility(const MobilityModel& model, std::span<Point> positions,
                   std::span<Walker> walkers, double dt, std::span<Rng> rngs) {
  if (model.kind == MobilityKind::Static) return;
  if (!(dt > 0.0)) throw ArgumentError("mobility step must be positive");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Walker& w = walkers[i];
    double left = dt;
    while (left > 0.0) {
      if (w.leg_left <= 0.0) new_leg(model, w, rngs[i]);
      const double step = std::min(left, w.leg_left);
      positions[i] = positions[i] + step * w.velocity;
      reflect_into(model.bounds, positions[i], w.velocity);
      w.leg_left -= step;
      left -= step;
    }
  }
}

}  // namespace ofp::sim
