#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wext/geometry.hpp"

namespace wext {

/// Size of a greedy maximal R-separated subset of atoms in the closed ball
/// B(x, kR), scanning atoms in index order. A greedy maximal set is within
/// the usual factor of the true packing number. Requires k > 1 and R > 0.
std::size_t packing_count(const CompactSetSample& set, const Point& x, double R, double k);

/// Scales probed by estimate_dimensions (in units of the rescaled diameter 1).
struct ScaleRange {
  double k_base = 3.0;                            // k = k_base^j, j = 1, 2, ...
  std::vector<double> outer_radii{1.0, 1.0 / 3.0};  // kR values
  /// Smallest admissible R as a multiple of the (rescaled) atom resolution.
  double resolution_factor = 4.0;
  int max_levels = 64;
};

struct ScaleSample {
  double k;
  double R;
  std::size_t max_count;
  std::size_t min_count;
};

struct DimensionEstimate {
  double upper = 0.0;
  double lower = 0.0;
  double fit_residual = 0.0;
  std::vector<ScaleSample> scales;
};

/// Log-log regression of max_x N(x,R,k) (upper) and min_x N(x,R,k) (lower)
/// against k after rescaling the set to diameter 1. `trials` atoms serve as
/// centres. Deterministic given the seed; throws if fewer than two k levels
/// sit above the resolution floor.
DimensionEstimate estimate_dimensions(const CompactSetSample& set, std::size_t trials, const ScaleRange& range,
                                      std::uint64_t seed);

/// Two-column "log k  log N" table (upper envelope, then lower).
std::string format_dimension_table(const DimensionEstimate& est);

}  // namespace wext
