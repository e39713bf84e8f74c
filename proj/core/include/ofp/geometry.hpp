#pragma once

#include <array>
#include <cmath>
#include <variant>
#include <vector>

namespace ofp::geometry {

/// Planar position in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Counterclockwise rotation about the origin.
inline Point rotate(Point p, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Scale-relative equality tolerance: points closer than this are the same point.
inline double epsilon(double range) { return 1e-6 * range; }

struct Circle {
  Point center;
  double radius = 0.0;
  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Axis-aligned rectangle; `origin` is the lower-left corner.
struct Rectangle {
  Point origin;
  double width = 0.0;
  double height = 0.0;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

class Region {
public:
  Region() = default;
  Region(Circle c);
  Region(Rectangle r);

  static Region circle(double radius, Point center = {});
  /// Rectangle centered on `center`.
  static Region rectangle(double width, double height, Point center = {});

  bool is_circle() const { return std::holds_alternative<Circle>(shape_); }
  const Circle& as_circle() const { return std::get<Circle>(shape_); }
  const Rectangle& as_rectangle() const { return std::get<Rectangle>(shape_); }

  Point center() const;
  double area() const;
  /// Closed membership with an absolute slack `tol` (negative `tol` shrinks the region).
  bool contains(Point p, double tol = 0.0) const;
  /// Axis-aligned bounding box as {min, max}.
  std::array<Point, 2> bounds() const;

  friend bool operator==(const Region&, const Region&) = default;

private:
  std::variant<Circle, Rectangle> shape_{Rectangle{}};
};

struct StrategicCandidate {
  Point location;
  double distance_from_node = 0.0;
};

/// Vertices of the regular hexagon of circumradius `range` around `center`,
/// counterclockwise starting at center + (range, 0).
std::array<Point, 6> hex_vertices(Point center, double range);

/// The two lattice neighbors of `l2` other than the one toward `l1`, at
/// +120 and -120 degrees from the back direction. The step is always `range`.
std::array<Point, 2> forward_candidates(Point l1, Point l2, double range);

/// Nearest strategic location to `node`. From the source the candidates are the
/// source hexagon's vertices, otherwise forward_candidates(l1, l2). Ties go to
/// the lower candidate index.
StrategicCandidate nearest_strategic(Point node, Point l1, Point l2, Point source,
                                     bool from_source, double range);

/// Which boundary points an ideal lattice keeps.
enum class Boundary { Closed, Open };

/// Ideal-case placement: the source plus every vertex of the side-`range`
/// honeycomb whose hexagon around `source` has a vertex at source + (range, 0),
/// restricted to `region`. Boundary points (within epsilon) are kept for
/// Boundary::Closed and dropped for Boundary::Open. The source comes first.
std::vector<Point> ideal_lattice(const Region& region, Point source, double range,
                                 Boundary boundary = Boundary::Closed);

}  // namespace ofp::geometry
