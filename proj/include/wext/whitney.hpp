#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "wext/jet.hpp"
#include "wext/kdtree.hpp"

namespace wext {

/// Classical Whitney extension F(f)(x) = sum_i phi_i(x) T_{x_i} f(x) over a
/// Whitney decomposition of the complement into dyadic cubes Q with
/// diam Q <= d(Q, E) < 4 diam Q. Each cube carries a tensor bump equal to 1 on
/// Q and vanishing off its 9/8 dilate; bumps are normalised to a partition of
/// unity, and x_i is the atom nearest the centre of Q.
class WhitneyBaseline {
 public:
  static constexpr double kDilation = 9.0 / 8.0;

  explicit WhitneyBaseline(Jet jet);

  struct Evaluation {
    double value = 0.0;
    double partition_sum = 0.0;  // sum of the normalised weights, 1 up to rounding
    std::size_t cubes = 0;       // cubes whose dilate contains x
  };
  Evaluation evaluate(std::span<const double> x) const;

  struct Cube {
    int level;  // side 2^-level
    std::vector<std::int64_t> corner;
  };
  /// The Whitney cube containing x.
  Cube cube_of(std::span<const double> x) const;
  bool is_whitney(const Cube& q) const;

 private:
  double side(int level) const;
  double dist_to_set(const Cube& q) const;
  bool admissible(const Cube& q) const;

  std::shared_ptr<const Jet> jet_;
  std::shared_ptr<const KdTree> index_;
};

double whitney_baseline(const Jet& jet, std::span<const double> x);

}  // namespace wext
