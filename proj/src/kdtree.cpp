#include "wext/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wext {

namespace {
constexpr std::size_t kLeafSize = 8;

// Squared distances accumulate in the same order as euclidean(), so comparisons
// against a point-by-point scan agree bit for bit.
double min_box_dist(std::span<const double> x, std::span<const double> lo, std::span<const double> hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = 0.0;
    if (x[i] < lo[i]) d = lo[i] - x[i];
    else if (x[i] > hi[i]) d = x[i] - hi[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double max_box_dist(std::span<const double> x, std::span<const double> lo, std::span<const double> hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::max(std::abs(x[i] - lo[i]), std::abs(hi[i] - x[i]));
    s += d * d;
  }
  return std::sqrt(s);
}

double box_box_dist(std::span<const double> alo, std::span<const double> ahi, std::span<const double> blo,
                    std::span<const double> bhi) {
  double s = 0.0;
  for (std::size_t i = 0; i < alo.size(); ++i) {
    double d = 0.0;
    if (ahi[i] < blo[i]) d = blo[i] - ahi[i];
    else if (bhi[i] < alo[i]) d = alo[i] - bhi[i];
    s += d * d;
  }
  return std::sqrt(s);
}
}  // namespace

KdTree::KdTree(std::span<const Point> points, std::span<const double> weights)
    : dim_(points.empty() ? 0 : points.front().dim()), count_(points.size()) {
  if (points.empty()) throw std::invalid_argument("KdTree: empty point set");
  if (!weights.empty() && weights.size() != points.size())
    throw std::invalid_argument("KdTree: weight count does not match point count");
  coords_.reserve(count_ * dim_);
  for (const auto& p : points) {
    if (p.dim() != dim_) throw std::invalid_argument("KdTree: mixed dimensions");
    coords_.insert(coords_.end(), p.coords().begin(), p.coords().end());
  }
  weights_.assign(weights.begin(), weights.end());
  if (weights_.empty()) weights_.assign(count_, 1.0);
  order_.resize(count_);
  for (std::size_t i = 0; i < count_; ++i) order_[i] = i;
  nodes_.reserve(2 * count_ / kLeafSize + 2);
  build(0, count_);
}

int KdTree::build(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({begin, end});
  box_.resize(box_.size() + 2 * dim_);
  double* lo = box_.data() + 2 * dim_ * id;
  double* hi = lo + dim_;
  std::fill(lo, lo + dim_, std::numeric_limits<double>::infinity());
  std::fill(hi, hi + dim_, -std::numeric_limits<double>::infinity());
  long double w = 0;
  for (std::size_t k = begin; k < end; ++k) {
    const std::size_t p = order_[k];
    for (std::size_t a = 0; a < dim_; ++a) {
      lo[a] = std::min(lo[a], coord(p, a));
      hi[a] = std::max(hi[a], coord(p, a));
    }
    w += weights_[p];
  }
  nodes_[id].weight = w;
  if (end - begin <= kLeafSize) return id;

  std::size_t axis = 0;
  for (std::size_t a = 1; a < dim_; ++a)
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::size_t a, std::size_t b) {
                     const double ca = coord(a, axis), cb = coord(b, axis);
                     return ca < cb || (ca == cb && a < b);
                   });
  const int l = build(begin, mid);
  const int r = build(mid, end);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

KdTree::Hit KdTree::nearest(std::span<const double> x, std::size_t exclude) const {
  Hit best{count_, std::numeric_limits<double>::infinity()};
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    if (min_box_dist(x, lo(id), hi(id)) > best.dist) continue;
    if (node.left < 0) {
      for (std::size_t k = node.begin; k < node.end; ++k) {
        const std::size_t p = order_[k];
        if (p == exclude) continue;
        const double d = euclidean(x, {coords_.data() + p * dim_, dim_});
        if (d < best.dist || (d == best.dist && p < best.index)) best = {p, d};
      }
      continue;
    }
    const double dl = min_box_dist(x, lo(node.left), hi(node.left));
    const double dr = min_box_dist(x, lo(node.right), hi(node.right));
    // Visit the closer child first (pushed last).
    if (dl <= dr) {
      stack.push_back(node.right);
      stack.push_back(node.left);
    } else {
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }
  return best;
}

double KdTree::mass_within(std::span<const double> x, double r) const {
  long double total = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    if (min_box_dist(x, lo(id), hi(id)) > r) continue;
    if (max_box_dist(x, lo(id), hi(id)) <= r) {
      total += node.weight;
      continue;
    }
    if (node.left < 0) {
      for (std::size_t k = node.begin; k < node.end; ++k) {
        const std::size_t p = order_[k];
        if (euclidean(x, {coords_.data() + p * dim_, dim_}) <= r) total += weights_[p];
      }
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  return static_cast<double>(total);
}

std::vector<std::size_t> KdTree::within(std::span<const double> x, double r) const {
  std::vector<std::size_t> out;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    if (min_box_dist(x, lo(id), hi(id)) > r) continue;
    if (node.left < 0 || max_box_dist(x, lo(id), hi(id)) <= r) {
      const bool all = max_box_dist(x, lo(id), hi(id)) <= r;
      for (std::size_t k = node.begin; k < node.end; ++k) {
        const std::size_t p = order_[k];
        if (all || euclidean(x, {coords_.data() + p * dim_, dim_}) <= r) out.push_back(p);
      }
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double KdTree::distance_to_box(std::span<const double> blo, std::span<const double> bhi) const {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& node = nodes_[id];
    if (box_box_dist(lo(id), hi(id), blo, bhi) >= best) continue;
    if (node.left < 0) {
      for (std::size_t k = node.begin; k < node.end; ++k) {
        const std::span<const double> p{coords_.data() + order_[k] * dim_, dim_};
        best = std::min(best, min_box_dist(p, blo, bhi));
      }
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  return best;
}

}  // namespace wext
