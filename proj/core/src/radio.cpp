#include "ofp/radio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ofp/errors.hpp"

namespace ofp::sim {

RadioModel::RadioModel(double range, double distortion, int sectors, double error_rate)
    : range_(range), distortion_(distortion), sectors_(sectors), error_rate_(error_rate) {
  if (!(range > 0.0)) throw ArgumentError("radio range must be positive");
  if (!(distortion >= 0.0 && distortion < 1.0)) throw ArgumentError("distortion must lie in [0, 1)");
  if (sectors < 1) throw ArgumentError("sector count must be at least 1");
  if (!(error_rate >= 0.0 && error_rate < 1.0)) throw ArgumentError("error rate must lie in [0, 1)");
}

void RadioModel::sample_ranges(std::size_t nodes, Rng& rng) {
  ranges_.clear();
  if (distortion_ == 0.0) return;
  ranges_.resize(nodes * static_cast<std::size_t>(sectors_));
  const double lo = (1.0 - distortion_) * range_;
  for (double& r : ranges_) r = uniform(rng, lo, range_);
}

double RadioModel::range_toward(NodeId node, double radians) const {
  if (ranges_.empty()) return range_;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(radians, two_pi);
  if (a < 0.0) a += two_pi;
  auto sector = static_cast<std::size_t>(a / two_pi * sectors_);
  sector = std::min(sector, static_cast<std::size_t>(sectors_ - 1));
  return ranges_[static_cast<std::size_t>(node) * static_cast<std::size_t>(sectors_) + sector];
}

bool RadioModel::covers(NodeId tx, Point tx_pos, Point rx_pos) const {
  const Point d = rx_pos - tx_pos;
  const double dist = geometry::norm(d);
  const double eps = geometry::epsilon(range_);
  if (dist > range_ + eps) return false;
  if (ranges_.empty()) return true;
  return dist <= range_toward(tx, std::atan2(d.y, d.x)) + eps;
}

std::span<const double> RadioModel::sector_ranges(NodeId node) const {
  if (ranges_.empty()) return {};
  return std::span<const double>(ranges_).subspan(
      static_cast<std::size_t>(node) * static_cast<std::size_t>(sectors_),
      static_cast<std::size_t>(sectors_));
}

SpatialGrid::SpatialGrid(std::span<const Point> positions, double cell) : cell_(cell) {
  if (!(cell > 0.0)) throw ArgumentError("grid cell must be positive");
  rebuild(positions);
}

void SpatialGrid::rebuild(std::span<const Point> positions) {
  if (positions.empty()) {
    cols_ = rows_ = 0;
    buckets_.clear();
    return;
  }
  double max_x = positions[0].x, max_y = positions[0].y;
  min_x_ = max_x;
  min_y_ = max_y;
  for (Point p : positions) {
    min_x_ = std::min(min_x_, p.x);
    min_y_ = std::min(min_y_, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  cols_ = static_cast<long>((max_x - min_x_) / cell_) + 1;
  rows_ = static_cast<long>((max_y - min_y_) / cell_) + 1;
  buckets_.assign(static_cast<std::size_t>(cols_ * rows_), {});
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const long cx = static_cast<long>((positions[i].x - min_x_) / cell_);
    const long cy = static_cast<long>((positions[i].y - min_y_) / cell_);
    buckets_[static_cast<std::size_t>(cy * cols_ + cx)].push_back(static_cast<NodeId>(i));
  }
}

void SpatialGrid::collect_near(Point p, double radius, std::vector<NodeId>& out) const {
  if (buckets_.empty()) return;
  auto clamp = [](long v, long hi) { return std::clamp(v, 0L, hi - 1); };
  const double fx0 = std::floor((p.x - radius - min_x_) / cell_);
  const double fx1 = std::floor((p.x + radius - min_x_) / cell_);
  const double fy0 = std::floor((p.y - radius - min_y_) / cell_);
  const double fy1 = std::floor((p.y + radius - min_y_) / cell_);
  if (fx1 < 0 || fy1 < 0 || fx0 >= static_cast<double>(cols_) || fy0 >= static_cast<double>(rows_)) {
    return;
  }
  const long x0 = clamp(static_cast<long>(fx0), cols_), x1 = clamp(static_cast<long>(fx1), cols_);
  const long y0 = clamp(static_cast<long>(fy0), rows_), y1 = clamp(static_cast<long>(fy1), rows_);
  for (long cy = y0; cy <= y1; ++cy) {
    for (long cx = x0; cx <= x1; ++cx) {
      const auto& b = buckets_[static_cast<std::size_t>(cy * cols_ + cx)];
      out.insert(out.end(), b.begin(), b.end());
    }
  }
}

namespace {

std::vector<NodeId> filter_receivers(NodeId tx, Point tx_pos, std::span<const Point> positions,
                                     const RadioModel& radio, Rng& channel,
                                     std::vector<NodeId> candidates) {
  std::sort(candidates.begin(), candidates.end());
  std::vector<NodeId> out;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (NodeId id : candidates) {
    if (id == tx || !radio.covers(tx, tx_pos, positions[id])) continue;
    // One draw per covered receiver, even at zero error, keeps the stream aligned.
    if (u(channel) < radio.error_rate()) continue;
    out.push_back(id);
  }
  return out;
}

}  // namespace

std::vector<NodeId> deliver(NodeId tx, Point tx_pos, std::span<const Point> positions,
                            const RadioModel& radio, Rng& channel) {
  std::vector<NodeId> all(positions.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<NodeId>(i);
  return filter_receivers(tx, tx_pos, positions, radio, channel, std::move(all));
}

std::vector<NodeId> deliver(NodeId tx, Point tx_pos, std::span<const Point> positions,
                            const RadioModel& radio, Rng& channel, const SpatialGrid& grid,
                            double query_slack) {
  std::vector<NodeId> near;
  grid.collect_near(tx_pos, radio.range() + query_slack, near);
  return filter_receivers(tx, tx_pos, positions, radio, channel, std::move(near));
}

}  // namespace ofp::sim
