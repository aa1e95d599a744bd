#include "wext/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "wext/kdtree.hpp"
#include "wext/parallel.hpp"
#include "wext/text_io.hpp"

namespace wext {

namespace {

// Hash grid of accepted centres with cell side R: a candidate only needs the
// 3^n neighbouring cells.
class SeparatedSet {
 public:
  SeparatedSet(std::size_t dim, double R) : dim_(dim), R_(R) {}

  bool try_insert(std::span<const double> p) {
    std::vector<std::int64_t> cell(dim_);
    for (std::size_t i = 0; i < dim_; ++i) cell[i] = static_cast<std::int64_t>(std::floor(p[i] / R_));
    std::vector<std::int64_t> probe(dim_);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < dim_; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t rest = c;
      for (std::size_t i = 0; i < dim_; ++i) {
        probe[i] = cell[i] + static_cast<std::int64_t>(rest % 3) - 1;
        rest /= 3;
      }
      auto it = cells_.find(key(probe));
      if (it == cells_.end()) continue;
      for (std::size_t k : it->second)
        if (euclidean(p, {points_.data() + k * dim_, dim_}) < R_) return false;
    }
    const std::size_t id = points_.size() / dim_;
    points_.insert(points_.end(), p.begin(), p.end());
    cells_[key(cell)].push_back(id);
    return true;
  }

  std::size_t size() const { return points_.size() / dim_; }

 private:
  static std::uint64_t key(const std::vector<std::int64_t>& c) {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return h;
  }

  std::size_t dim_;
  double R_;
  std::vector<double> points_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

std::size_t greedy_count(const CompactSetSample& set, std::span<const double> x, double R, double k, double scale) {
  // `scale` multiplies coordinates: queries on the rescaled set without copying it.
  const auto members = set.index().within(x, k * R / scale);
  SeparatedSet kept(set.dim(), R);
  std::vector<double> p(set.dim());
  for (std::size_t a : members) {
    const auto c = set.atom(a).coords();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = c[i] * scale;
    kept.try_insert(p);
  }
  return kept.size();
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys, double& residual) {
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double b = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + b * (xs[i] - mx));
    ss += e * e;
  }
  residual = std::sqrt(ss / n);
  return b;
}

}  // namespace

std::size_t packing_count(const CompactSetSample& set, const Point& x, double R, double k) {
  if (!(k > 1.0)) throw std::invalid_argument("packing_count: k must exceed 1");
  if (!(R > 0.0)) throw std::invalid_argument("packing_count: R must be positive");
  if (x.dim() != set.dim()) throw std::invalid_argument("packing_count: dimension mismatch");
  // Centre coordinates are not rescaled; pass them through unchanged.
  const auto members = set.index().within(x.coords(), k * R);
  SeparatedSet kept(set.dim(), R);
  for (std::size_t a : members) kept.try_insert(set.atom(a).coords());
  return kept.size();
}

DimensionEstimate estimate_dimensions(const CompactSetSample& set, std::size_t trials, const ScaleRange& range,
                                      std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_dimensions: trials must be >= 1");
  if (!(range.k_base > 1.0)) throw std::invalid_argument("estimate_dimensions: k_base must exceed 1");
  DimensionEstimate est;
  if (set.size() == 1 || !(set.diameter() > 0.0)) return est;  // N == 1 at every scale

  const double scale = 1.0 / set.diameter();
  const double r_floor = range.resolution_factor * set.resolution() * scale;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
  std::vector<std::size_t> centres(trials);
  for (auto& c : centres) c = pick(rng);

  struct Probe {
    double k, R;
  };
  std::vector<Probe> probes;
  std::vector<double> ks;
  // A level counts only if every outer radius is admissible there, so the
  // envelopes compare like with like across k.
  for (int j = 1; j <= range.max_levels; ++j) {
    const double k = std::pow(range.k_base, j);
    bool all = true;
    for (double outer : range.outer_radii) all = all && outer / k >= r_floor;
    if (!all) break;
    for (double outer : range.outer_radii) probes.push_back({k, outer / k});
    ks.push_back(k);
  }
  if (ks.size() < 2)
    throw std::invalid_argument("estimate_dimensions: fewer than two scales above the resolution floor");

  std::vector<std::size_t> counts(probes.size() * trials);
  parallel_for(counts.size(), [&](std::size_t id) {
    const Probe& p = probes[id / trials];
    const Point& x = set.atom(centres[id % trials]);
    counts[id] = greedy_count(set, x.coords(), p.R, p.k, scale);
  });

  std::vector<double> lk, lmax, lmin;
  for (double k : ks) {
    std::size_t hi = 0, lo = std::numeric_limits<std::size_t>::max();
    for (std::size_t p = 0; p < probes.size(); ++p) {
      if (probes[p].k != k) continue;
      std::size_t phi = 0, plo = std::numeric_limits<std::size_t>::max();
      for (std::size_t t = 0; t < trials; ++t) {
        phi = std::max(phi, counts[p * trials + t]);
        plo = std::min(plo, counts[p * trials + t]);
      }
      est.scales.push_back({k, probes[p].R, phi, plo});
      hi = std::max(hi, phi);
      lo = std::min(lo, plo);
    }
    lk.push_back(std::log(k));
    lmax.push_back(std::log(static_cast<double>(hi)));
    lmin.push_back(std::log(static_cast<double>(lo)));
  }
  double res_up = 0, res_low = 0;
  est.upper = std::max(0.0, slope(lk, lmax, res_up));
  est.lower = std::max(0.0, slope(lk, lmin, res_low));
  est.fit_residual = std::max(res_up, res_low);
  return est;
}

std::string format_dimension_table(const DimensionEstimate& est) {
  std::string out = "# log_k log_N_max log_N_min R\n";
  for (const auto& s : est.scales) {
    out += io::format_real(std::log(s.k)) + ' ' + io::format_real(std::log(static_cast<double>(s.max_count))) + ' ' +
           io::format_real(std::log(static_cast<double>(s.min_count))) + ' ' + io::format_real(s.R) + '\n';
  }
  return out;
}

}  // namespace wext
