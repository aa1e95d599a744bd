#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wext/geometry.hpp"

namespace wext {

/// Subdivision tree over a root cube. Only occupied children are stored;
/// an absent child carries mass zero.
class DyadicTree {
 public:
  struct Node {
    int level = 0;
    std::vector<std::int64_t> cell;  // integer cell coordinates at `level`
    double mass = 0.0;
    std::vector<int> children;       // occupied children, ascending child id
    std::vector<std::size_t> atoms;  // leaf only: atoms of E in this cell
  };

  DyadicTree(Point root_center, double root_half_width, int branching, int depth);

  const Point& root_center() const { return center_; }
  double root_half_width() const { return half_width_; }
  int branching() const { return branching_; }
  int depth() const { return depth_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& root() const { return nodes_.front(); }

  double side_at(int level) const;
  Point cell_center(const Node& node) const;

  /// Largest |parent mass - sum of children| over internal nodes.
  double conservation_defect() const;

 private:
  friend class MeasureBuilder;
  Point center_;
  double half_width_;
  int branching_;
  int depth_;
  std::vector<Node> nodes_;
};

enum class Weighting { equal_split };

struct MeasureOptions {
  int depth = 1;
  Weighting weighting = Weighting::equal_split;
  /// Subdivision factor per axis. 0 picks 1/r for a self-similar set with a
  /// common integer-reciprocal contraction ratio r, and 2 otherwise.
  int branching = 0;
};

/// Finite atomic probability measure supported on atoms of a compact set.
class DoublingMeasure {
 public:
  /// Weights must be positive and sum to 1 within 1e-12.
  DoublingMeasure(std::vector<Point> atoms, std::vector<double> weights, int depth, double resolution,
                  std::optional<DyadicTree> tree = std::nullopt, std::vector<std::size_t> source = {});

  std::size_t size() const { return atoms_.size(); }
  std::size_t dim() const { return atoms_.front().dim(); }
  std::span<const Point> atoms() const { return atoms_; }
  const Point& atom(std::size_t i) const { return atoms_[i]; }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  int depth() const { return depth_; }
  double resolution() const { return resolution_; }
  double diameter() const { return diameter_; }
  const std::optional<DyadicTree>& tree() const { return tree_; }
  /// Index of each atom in the set the measure was built from.
  std::span<const std::size_t> source() const { return source_; }
  /// The support as a compact set sample.
  const CompactSetSample& support() const { return *support_; }

  /// mu(B(x, r)) for the closed ball.
  double ball_mass(std::span<const double> x, double r) const;
  double ball_mass(const Point& x, double r) const { return ball_mass(x.coords(), r); }

  /// mu[t, s] = mu(B(t, d(t, s))) for atom indices t, s. Not symmetric.
  double mu_pair(std::size_t t, std::size_t s) const;

  /// mu[t, s] for every s at once: O(N log N) instead of N ball queries.
  std::vector<double> mu_pairs_from(std::size_t t) const;

 private:
  std::vector<Point> atoms_;
  std::vector<double> weights_;
  int depth_;
  double resolution_;
  double diameter_;
  std::optional<DyadicTree> tree_;
  std::vector<std::size_t> source_;
  std::shared_ptr<const CompactSetSample> support_;
  std::shared_ptr<const KdTree> index_;
};

/// Equal-split construction: each node's mass is divided equally among its
/// occupied children down to `depth`; a leaf's mass goes to the atom closest
/// to the leaf centre. Throws ResolutionMismatch if leaves are finer than the
/// set's resolution.
DoublingMeasure build_measure(const CompactSetSample& set, const MeasureOptions& options);

struct CertifyOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  /// Smallest inner radius sampled; defaults to the measure's resolution.
  std::optional<double> min_radius;
  /// Sample only this dilation factor (still subject to kR <= diam).
  std::optional<double> fixed_k;
  /// pass iff c_up <= threshold and c_low >= 1 / threshold.
  double threshold = 16.0;
};

struct MeasureCertificate {
  double gamma_up = 0.0;
  double lambda_low = 0.0;
  double c_up = 0.0;   // max mu(B(x,kR)) / (k^gamma mu(B(x,R)))
  double c_low = 0.0;  // min mu(B(x,kR)) / (k^lambda mu(B(x,R)))
  std::size_t samples = 0;
  bool pass = false;
};

/// Samples (x, R, k) with x an atom and R_min <= R < kR <= diam and records the
/// extreme growth ratios. Deterministic given the seed.
MeasureCertificate certify(const DoublingMeasure& mu, double gamma, double lambda, const CertifyOptions& options);

std::string format_measure(const DoublingMeasure& mu);
DoublingMeasure read_measure(const std::string& path);

}  // namespace wext
