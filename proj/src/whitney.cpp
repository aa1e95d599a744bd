#include "wext/whitney.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "wext/errors.hpp"
#include "wext/extension.hpp"

namespace wext {

namespace {

// 1 on [-1, 1], 0 off [-9/8, 9/8].
double bump1(double u) {
  const double a = std::abs(u);
  if (a <= 1.0) return 1.0;
  if (a >= WhitneyBaseline::kDilation) return 0.0;
  return smooth_step((a - 1.0) / (WhitneyBaseline::kDilation - 1.0));
}

}  // namespace

WhitneyBaseline::WhitneyBaseline(Jet jet) : jet_(std::make_shared<const Jet>(std::move(jet))) {
  index_ = std::make_shared<const KdTree>(std::vector<Point>(jet_->base().begin(), jet_->base().end()));
}

double WhitneyBaseline::side(int level) const { return std::ldexp(1.0, -level); }

double WhitneyBaseline::dist_to_set(const Cube& q) const {
  const double s = side(q.level);
  std::vector<double> lo(q.corner.size()), hi(q.corner.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = static_cast<double>(q.corner[i]) * s;
    hi[i] = lo[i] + s;
  }
  return index_->distance_to_box(lo, hi);
}

bool WhitneyBaseline::admissible(const Cube& q) const {
  return side(q.level) * std::sqrt(static_cast<double>(q.corner.size())) <= dist_to_set(q);
}

bool WhitneyBaseline::is_whitney(const Cube& q) const {
  if (!admissible(q)) return false;
  Cube parent{q.level - 1, q.corner};
  for (auto& c : parent.corner) c = c >= 0 ? c / 2 : -((-c + 1) / 2);
  return !admissible(parent);
}

WhitneyBaseline::Cube WhitneyBaseline::cube_of(std::span<const double> x) const {
  const auto hit = index_->nearest(x);
  if (!(hit.dist > 0.0)) throw SingularityError("whitney_baseline: x lies on the set");
  const double root_n = std::sqrt(static_cast<double>(x.size()));
  int level = static_cast<int>(std::ceil(-std::log2(hit.dist / (2.0 * root_n))));
  auto at = [&](int l) {
    Cube q{l, std::vector<std::int64_t>(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) q.corner[i] = static_cast<std::int64_t>(std::floor(x[i] / side(l)));
    return q;
  };
  Cube q = at(level);
  while (!admissible(q)) q = at(++level);
  while (admissible(at(level - 1))) q = at(--level);
  return q;
}

WhitneyBaseline::Evaluation WhitneyBaseline::evaluate(std::span<const double> x) const {
  if (x.size() != jet_->dim()) throw std::invalid_argument("whitney_baseline: dimension mismatch");
  const Cube home = cube_of(x);
  const std::size_t n = x.size();
  struct Term {
    double weight;
    double taylor;
  };
  std::vector<Term> terms;
  for (int level = home.level - 4; level <= home.level + 4; ++level) {
    const double s = side(level);
    std::vector<std::int64_t> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = static_cast<std::int64_t>(std::floor(x[i] / s - 0.5 - kDilation / 2));
      hi[i] = static_cast<std::int64_t>(std::floor(x[i] / s - 0.5 + kDilation / 2)) + 1;
    }
    Cube q{level, lo};
    std::function<void(std::size_t)> visit = [&](std::size_t axis) {
      if (axis == n) {
        double w = 1.0;
        std::vector<double> centre(n);
        for (std::size_t i = 0; i < n; ++i) {
          centre[i] = (static_cast<double>(q.corner[i]) + 0.5) * s;
          w *= bump1((x[i] - centre[i]) / (0.5 * s));
        }
        if (w > 0.0 && is_whitney(q)) {
          const auto anchor = index_->nearest(centre);
          terms.push_back({w, taylor(*jet_, anchor.index, x)});
        }
        return;
      }
      for (std::int64_t c = lo[axis]; c <= hi[axis]; ++c) {
        q.corner[axis] = c;
        visit(axis + 1);
      }
    };
    visit(0);
  }
  Evaluation out;
  double total = 0.0;
  for (const auto& t : terms) total += t.weight;
  if (!(total > 0.0)) throw std::logic_error("whitney_baseline: no cube covers x");
  for (const auto& t : terms) {
    out.value += t.weight / total * t.taylor;
    out.partition_sum += t.weight / total;
  }
  out.cubes = terms.size();
  return out;
}

double whitney_baseline(const Jet& jet, std::span<const double> x) { return WhitneyBaseline(jet).evaluate(x).value; }

}  // namespace wext
