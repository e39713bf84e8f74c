#pragma once

#include <cstdint>
#include <vector>

#include "ofp/geometry.hpp"
#include "ofp/protocol.hpp"
#include "ofp/rng.hpp"

namespace ofp::sim {

struct NodeLayout {
  std::vector<geometry::Point> positions;  // index is the node id
  NodeId source = 0;
};

/// round(density * area / range^2), the node count for a density given per
/// range x range square.
std::uint32_t nodes_for_density(const geometry::Region& region, double density, double range);

/// `count` nodes i.i.d. uniform over the region; the source is the node
/// nearest the region center (lowest id on ties). Throws ScenarioError when
/// count < 2.
NodeLayout place_nodes(const geometry::Region& region, std::uint32_t count, Rng& rng);

NodeLayout place_nodes_by_density(const geometry::Region& region, double density, double range,
                                  Rng& rng);

/// One node on each ideal lattice point, source at the region center.
NodeLayout place_ideal(const geometry::Region& region, double range, geometry::Boundary boundary);

}  // namespace ofp::sim
