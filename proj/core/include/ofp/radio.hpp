#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofp/geometry.hpp"
#include "ofp/protocol.hpp"
#include "ofp/rng.hpp"

namespace ofp::sim {

using geometry::Point;

/// Unit-disk radio with optional per-direction range distortion and
/// independent per-reception loss.
///
/// Each node's coverage is split into `sectors` equal angular sectors whose
/// ranges are drawn once per trial, uniform in [(1 - distortion) R, R].
/// Reception depends only on the transmitter's range toward the receiver, so
/// links may be asymmetric.
class RadioModel {
public:
  RadioModel() = default;
  RadioModel(double range, double distortion, int sectors, double error_rate);

  /// Draws per-node sector ranges. With zero distortion every range is R.
  void sample_ranges(std::size_t nodes, Rng& rng);

  double range() const { return range_; }
  double distortion() const { return distortion_; }
  double error_rate() const { return error_rate_; }
  int sectors() const { return sectors_; }

  /// Range of `node` toward bearing `radians`.
  double range_toward(NodeId node, double radians) const;
  /// True if `rx` lies inside the transmitter's coverage (before channel loss).
  bool covers(NodeId tx, Point tx_pos, Point rx_pos) const;
  std::span<const double> sector_ranges(NodeId node) const;

private:
  double range_ = 300.0;
  double distortion_ = 0.0;
  int sectors_ = 12;
  double error_rate_ = 0.0;
  std::vector<double> ranges_;  // nodes x sectors, empty when undistorted
};

/// Bucket grid with cell size R for range queries.
class SpatialGrid {
public:
  SpatialGrid() = default;
  SpatialGrid(std::span<const Point> positions, double cell);

  void rebuild(std::span<const Point> positions);
  /// Appends every indexed id in cells overlapping the disk of `radius`
  /// around `p`. A superset; callers test the exact range.
  void collect_near(Point p, double radius, std::vector<NodeId>& out) const;

private:
  double cell_ = 1.0;
  double min_x_ = 0.0;
  double min_y_ = 0.0;
  long cols_ = 0;
  long rows_ = 0;
  std::vector<std::vector<NodeId>> buckets_;
};

/// Receivers of one transmission: nodes the transmitter covers that survive
/// the channel-loss draw, in ascending id order. Does not include `tx`.
std::vector<NodeId> deliver(NodeId tx, Point tx_pos, std::span<const Point> positions,
                            const RadioModel& radio, Rng& channel);

/// Same as deliver() but only visits the nodes the grid reports near `tx_pos`.
/// `positions` are the exact positions used for the range test.
std::vector<NodeId> deliver(NodeId tx, Point tx_pos, std::span<const Point> positions,
                            const RadioModel& radio, Rng& channel, const SpatialGrid& grid,
                            double query_slack);

}  // namespace ofp::sim
