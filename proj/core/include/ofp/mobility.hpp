#pragma once

#include <span>
#include <vector>

#include "ofp/geometry.hpp"
#include "ofp/rng.hpp"

namespace ofp::sim {

using geometry::Point;
using geometry::Region;

enum class MobilityKind { Static, RandomWalk };

/// Random walk with zero pause time: each leg lasts `leg_duration` seconds
/// with a heading uniform in [0, 2pi) and speed uniform in
/// [0.5, 1.5] x mean_speed. Nodes reflect off the region boundary.
struct MobilityModel {
  MobilityKind kind = MobilityKind::Static;
  double mean_speed = 0.0;
  double leg_duration = 10.0;
  Region bounds;

  double max_speed() const { return kind == MobilityKind::Static ? 0.0 : 1.5 * mean_speed; }
};

struct Walker {
  Point velocity;
  double leg_left = 0.0;  // seconds until the next heading draw
};

/// Starts every walker on a fresh leg.
std::vector<Walker> init_walkers(const MobilityModel& model, std::span<Rng> rngs);

/// Advances every node by `dt`. `rngs[i]` is node i's mobility stream.
/// The static model leaves positions untouched.
void step_mobility(const MobilityModel& model, std::span<Point> positions,
                   std::span<Walker> walkers, double dt, std::span<Rng> rngs);

/// Folds a point back into the region by mirroring across the boundary,
/// flipping the matching velocity component.
void reflect_into(const Region& region, Point& p, Point& velocity);

}  // namespace ofp::sim
