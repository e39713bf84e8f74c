#include "ofp/placement.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ofp/errors.hpp"

namespace ofp::sim {

using geometry::Point;

std::uint32_t nodes_for_density(const geometry::Region& region, double density, double range) {
  if (!(density > 0.0)) throw ScenarioError(fmt::format("density must be positive, got {}", density));
  if (!(range > 0.0)) throw ArgumentError("range must be positive");
  return static_cast<std::uint32_t>(std::llround(density * region.area() / (range * range)));
}

NodeLayout place_nodes(const geometry::Region& region, std::uint32_t count, Rng& rng) {
  if (count < 2) {
    throw ScenarioError(fmt::format("a broadcast needs at least 2 nodes, got {}", count));
  }
  const auto [lo, hi] = region.bounds();
  NodeLayout out;
  out.positions.reserve(count);
  while (out.positions.size() < count) {
    const Point p{uniform(rng, lo.x, hi.x), uniform(rng, lo.y, hi.y)};
    if (region.is_circle() && !region.contains(p)) continue;
    out.positions.push_back(p);
  }
  const Point c = region.center();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.positions.size(); ++i) {
    const double d = geometry::distance(out.positions[i], c);
    if (d < best) {
      best = d;
      out.source = static_cast<NodeId>(i);
    }
  }
  return out;
}

NodeLayout place_nodes_by_density(const geometry::Region& region, double density, double range,
                                  Rng& rng) {
  return place_nodes(region, nodes_for_density(region, density, range), rng);
}

NodeLayout place_ideal(const geometry::Region& region, double range, geometry::Boundary boundary) {
  NodeLayout out;
  out.positions = geometry::ideal_lattice(region, region.center(), range, boundary);
  out.source = 0;
  if (out.positions.size() < 2) throw ScenarioError("ideal lattice holds fewer than 2 nodes");
  return out;
}

}  // namespace ofp::sim
