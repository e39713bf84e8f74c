#include "ofp/geometry.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

#include "ofp/errors.hpp"

namespace ofp::geometry {

namespace {

void require_range(double range) {
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw ArgumentError(fmt::format("range must be positive and finite, got {}", range));
  }
}

void require_finite(Point p, const char* what) {
  if (!is_finite(p)) {
    throw ArgumentError(fmt::format("{} is not finite", what));
  }
}

}  // namespace

Region::Region(Circle c) : shape_(c) {
  if (!(c.radius > 0.0)) throw ArgumentError("circle radius must be positive");
  require_finite(c.center, "circle center");
}

Region::Region(Rectangle r) : shape_(r) {
  if (!(r.width > 0.0) || !(r.height > 0.0)) {
    throw ArgumentError("rectangle sides must be positive");
  }
  require_finite(r.origin, "rectangle origin");
}

Region Region::circle(double radius, Point center) { return Region(Circle{center, radius}); }

Region Region::rectangle(double width, double height, Point center) {
  return Region(Rectangle{{center.x - width / 2, center.y - height / 2}, width, height});
}

Point Region::center() const {
  if (is_circle()) return as_circle().center;
  const auto& r = as_rectangle();
  return {r.origin.x + r.width / 2, r.origin.y + r.height / 2};
}

double Region::area() const {
  if (is_circle()) return std::numbers::pi * as_circle().radius * as_circle().radius;
  return as_rectangle().width * as_rectangle().height;
}

bool Region::contains(Point p, double tol) const {
  if (is_circle()) {
    const auto& c = as_circle();
    return distance(p, c.center) <= c.radius + tol;
  }
  const auto& r = as_rectangle();
  return p.x >= r.origin.x - tol && p.x <= r.origin.x + r.width + tol &&
         p.y >= r.origin.y - tol && p.y <= r.origin.y + r.height + tol;
}

std::array<Point, 2> Region::bounds() const {
  if (is_circle()) {
    const auto& c = as_circle();
    return {Point{c.center.x - c.radius, c.center.y - c.radius},
            Point{c.center.x + c.radius, c.center.y + c.radius}};
  }
  const auto& r = as_rectangle();
  return {r.origin, Point{r.origin.x + r.width, r.origin.y + r.height}};
}

std::array<Point, 6> hex_vertices(Point center, double range) {
  require_range(range);
  require_finite(center, "hexagon center");
  std::array<Point, 6> out;
  for (int i = 0; i < 6; ++i) {
    const double a = i * std::numbers::pi / 3.0;
    out[i] = center + Point{range * std::cos(a), range * std::sin(a)};
  }
  return out;
}

std::array<Point, 2> forward_candidates(Point l1, Point l2, double range) {
  require_range(range);
  require_finite(l1, "L1");
  require_finite(l2, "L2");
  const double d = distance(l1, l2);
  if (d < epsilon(range)) {
    throw DegenerateGeometryError("L1 and L2 coincide; use the source hexagon instead");
  }
  const Point back = (1.0 / d) * (l1 - l2);
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  return {l2 + range * rotate(back, third), l2 + range * rotate(back, -third)};
}

StrategicCandidate nearest_strategic(Point node, Point l1, Point l2, Point source,
                                     bool from_source, double range) {
  require_finite(node, "node position");
  auto pick = [node](const auto& candidates) {
    StrategicCandidate best{candidates[0], distance(node, candidates[0])};
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const double d = distance(node, candidates[i]);
      if (d < best.distance_from_node) best = {candidates[i], d};
    }
    return best;
  };
  if (from_source) return pick(hex_vertices(source, range));
  return pick(forward_candidates(l1, l2, range));
}

std::vector<Point> ideal_lattice(const Region& region, Point source, double range,
                                 Boundary boundary) {
  require_range(range);
  require_finite(source, "source");
  const double eps = epsilon(range);
  if (!region.contains(source, eps)) {
    throw ArgumentError("source lies outside the region");
  }

  // Triangular lattice of spacing `range` anchored at the source; the hexagon
  // centers are the sublattice with (a - b) divisible by 3.
  const auto [lo, hi] = region.bounds();
  double reach = 0.0;
  for (Point corner : {lo, hi, Point{lo.x, hi.y}, Point{hi.x, lo.y}}) {
    reach = std::max(reach, distance(corner, source));
  }
  const int span = static_cast<int>(std::ceil(2.0 * reach / (range * std::sqrt(3.0)))) + 2;
  const Point e1{range, 0.0};
  const Point e2{range / 2.0, range * std::sqrt(3.0) / 2.0};
  const double tol = boundary == Boundary::Closed ? eps : -eps;

  std::vector<Point> out{source};
  for (int b = -span; b <= span; ++b) {
    for (int a = -span; a <= span; ++a) {
      if (((a - b) % 3 + 3) % 3 == 0) continue;
      const Point p = source + static_cast<double>(a) * e1 + static_cast<double>(b) * e2;
      if (region.contains(p, tol)) out.push_back(p);
    }
  }
  return out;
}

}  // namespace ofp::geometry
