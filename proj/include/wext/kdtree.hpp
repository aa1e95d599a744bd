#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wext/geometry.hpp"

namespace wext {

/// Static k-d tree over a point set with optional per-point weights.
/// Answers exact Euclidean queries: every shortcut (whole-box inclusion or
/// exclusion) is decided with the same rounding as a point-by-point scan.
class KdTree {
 public:
  KdTree(std::span<const Point> points, std::span<const double> weights = {});

  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }

  struct Hit {
    std::size_t index;
    double dist;
  };

  /// Nearest point; ties resolved toward the lowest index. `exclude` skips one index.
  Hit nearest(std::span<const double> x, std::size_t exclude = static_cast<std::size_t>(-1)) const;

  /// Total weight within the closed ball B(x, r).
  double mass_within(std::span<const double> x, double r) const;

  /// Indices within the closed ball B(x, r), ascending.
  std::vector<std::size_t> within(std::span<const double> x, double r) const;

  /// Distance from the box [lo, hi] to the nearest point.
  double distance_to_box(std::span<const double> lo, std::span<const double> hi) const;

 private:
  struct Node {
    std::size_t begin, end;  // range into order_
    int left = -1, right = -1;
    long double weight = 0;
  };

  int build(std::size_t begin, std::size_t end);
  double coord(std::size_t point, std::size_t axis) const { return coords_[point * dim_ + axis]; }
  std::span<const double> lo(int node) const { return {box_.data() + 2 * dim_ * node, dim_}; }
  std::span<const double> hi(int node) const { return {box_.data() + 2 * dim_ * node + dim_, dim_}; }

  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::vector<double> box_;
};

}  // namespace wext
