#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wext {

class KdTree;

/// A point of R^n. Immutable; coordinates are finite and n >= 1.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

enum class MetricKind { isotropic, non_isotropic_disk };

/// isotropic: |x - y|.  non_isotropic_disk: |1 - z conj(w)| with R^2 read as C;
/// a quasi-metric on the closed disk that equals |z - w| on the unit circle.
struct Metric {
  MetricKind kind = MetricKind::isotropic;
};

double euclidean(std::span<const double> x, std::span<const double> y);
double distance(const Point& x, const Point& y, Metric m = {});

/// x -> ratio * x + offset.
struct SimilarityMap {
  double ratio;
  std::vector<double> offset;

  Point apply(const Point& x) const;
};

/// Atoms of a self-similar set: depth-fold images of `base` under `maps`.
struct SelfSimilarGenerator {
  std::vector<SimilarityMap> maps;
  std::vector<Point> base;
  int depth = 0;
  /// Axis-aligned box containing the attractor; subdivision trees are rooted here.
  Point hull_lo;
  Point hull_hi;

  /// Common contraction ratio if every map shares it.
  std::optional<double> uniform_ratio() const;
};

/// Finite atom cloud standing in for a compact set at a declared resolution.
class CompactSetSample {
 public:
  /// Atoms must be nonempty and pairwise distinct. A non-positive resolution is
  /// replaced by half the largest nearest-neighbour spacing.
  explicit CompactSetSample(std::vector<Point> atoms, double resolution = 0.0,
                            std::optional<SelfSimilarGenerator> generator = std::nullopt);

  std::span<const Point> atoms() const { return atoms_; }
  const Point& atom(std::size_t i) const { return atoms_[i]; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t dim() const { return atoms_.front().dim(); }
  double resolution() const { return resolution_; }
  const std::optional<SelfSimilarGenerator>& generator() const { return generator_; }
  const KdTree& index() const { return *index_; }

  /// Largest pairwise distance between atoms.
  double diameter() const { return diameter_; }
  Point bbox_lo() const;
  Point bbox_hi() const;

 private:
  std::vector<Point> atoms_;
  double resolution_;
  double diameter_;
  std::optional<SelfSimilarGenerator> generator_;
  std::shared_ptr<const KdTree> index_;
};

struct NearestAtom {
  std::size_t index;
  Point point;
  double dist;
};

/// Closest atom to x; ties go to the lowest atom index.
NearestAtom nearest_point(const Point& x, const CompactSetSample& set);

/// Brute-force scan, kept as the oracle for the indexed query.
NearestAtom nearest_point_brute(const Point& x, const CompactSetSample& set);

double diameter_of(std::span<const Point> pts);

enum class SetKind { interval, cantor, sierpinski, circle_arc, file };

SetKind parse_set_kind(const std::string& name);
std::string to_string(SetKind kind);

struct SetParams {
  double arc_begin = 0.0;  // radians
  double arc_end = 0.0;    // radians; arc_end - arc_begin >= 2*pi gives the full circle
  std::string path;        // for SetKind::file
};

/// Deterministic test-set factory.
///   interval   : 2^depth + 1 equispaced atoms on [0,1]
///   cantor     : left endpoints of the 2^depth surviving middle-thirds intervals
///   sierpinski : 3^depth vertex images of the unit-side gasket
///   circle_arc : 2^depth + 1 atoms on the arc (2^depth for the full circle), in R^2
CompactSetSample generate_set(SetKind kind, int depth, const SetParams& params = {});

CompactSetSample read_point_cloud(const std::string& path);
std::string format_point_cloud(std::span<const Point> pts);

}  // namespace wext
