#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wext/geometry.hpp"
#include "wext/jet.hpp"
#include "wext/kdtree.hpp"
#include "wext/measure.hpp"
#include "wext/taylor_scalar.hpp"

namespace wext {

struct ExtensionParams {
  double q = 3.0;      // kernel exponent
  double alpha = 1.0;  // jet order
  Metric metric{};

  /// q = upsilon + alpha + 1 for a certified upper exponent upsilon.
  static ExtensionParams with_default_q(double upsilon, double alpha) { return {upsilon + alpha + 1.0, alpha, {}}; }
};

/// Kernel-averaged Taylor extension
///   E(f)(x) = h_q(x)^{-1} sum_t mu_t |x - t|^{-q} T_t f(x),  h_q(x) = sum_t mu_t |x - t|^{-q},
/// over the atoms of a doubling measure. The jet must live on the measure's atoms.
class Extension {
 public:
  Extension(Jet jet, DoublingMeasure mu, ExtensionParams params);

  const Jet& jet() const { return *jet_; }
  const DoublingMeasure& measure() const { return *mu_; }
  const ExtensionParams& params() const { return params_; }
  /// Largest derivative order extend_derivative accepts: floor(alpha) + 1.
  int max_derivative_order() const { return max_index_order(params_.alpha) + 1; }

  /// Nearest atom of the support and its distance to x.
  KdTree::Hit nearest(std::span<const double> x) const;

  double h_q(std::span<const double> x) const;
  double value(std::span<const double> x) const;

  /// Truncated Taylor expansion of E(f) at x up to total order `order`;
  /// derivative(a) of the result is D^a E(f)(x).
  TaylorScalar expand(std::span<const double> x, int order) const;
  /// Same for h_q and for 1/h_q.
  TaylorScalar expand_h(std::span<const double> x, int order) const;
  TaylorScalar expand_inverse_h(std::span<const double> x, int order) const;

  double derivative(std::span<const double> x, const MultiIndex& a) const;

  /// phi(x) E(f)(x) with phi = 1 on B(0,R), 0 off B(0,2R). Requires the set to
  /// lie in B(0, R/2).
  double windowed(std::span<const double> x, double R) const;
  TaylorScalar expand_windowed(std::span<const double> x, double R, int order) const;

  /// The extension operator of the same measure and q applied to another jet on
  /// the same base (typically a derived jet, of lower order).
  Extension with_jet(Jet other) const;

 private:
  const TaylorSpace& space(int order) const;
  double check_off_set(std::span<const double> x) const;
  void check_window(double R) const;
  struct Sums {
    TaylorScalar numerator;    // sum mu_t (|x-t|/d)^{-q} (T_t f - T_{x0} f)
    TaylorScalar denominator;  // sum mu_t (|x-t|/d)^{-q}
    double d;                  // distance from x to the support
    TaylorScalar anchor;       // T_{x0} f, x0 the nearest atom
  };
  Sums accumulate(std::span<const double> x, int order, bool with_taylor) const;

  std::shared_ptr<const Jet> jet_;
  std::shared_ptr<const DoublingMeasure> mu_;
  ExtensionParams params_;
  int top_;                           // floor(alpha)
  std::vector<double> coeff_;         // f_j(t) / j!, index-major: coeff_[k * N + t]
  std::vector<std::shared_ptr<TaylorSpace>> spaces_;
  double set_radius_;                 // max |t|
};

/// Free-function forms of the operator.
double h_q(const DoublingMeasure& mu, const ExtensionParams& params, const Point& x);
double extend(const Jet& jet, const DoublingMeasure& mu, const ExtensionParams& params, const Point& x);
double extend_derivative(const Jet& jet, const DoublingMeasure& mu, const ExtensionParams& params, const Point& x,
                         const MultiIndex& a);
double windowed_extension(const Jet& jet, const DoublingMeasure& mu, const ExtensionParams& params, double R,
                          const Point& x);

/// Smooth radial transition: 1 for |x| <= R, 0 for |x| >= 2R, built from exp(-1/t).
double window_profile(double radius, double R);

/// g(1-s) / (g(1-s) + g(s)) with g(t) = exp(-1/t), for s in (0, 1).
double smooth_step(double s);
TaylorScalar smooth_step(const TaylorScalar& s);

struct GridSpec {
  std::vector<double> origin;
  std::vector<double> spacing;
  std::vector<std::size_t> counts;

  std::size_t size() const;
  std::size_t dim() const { return origin.size(); }
  Point node(std::size_t flat) const;  // row-major, last axis fastest
};

struct FieldNode {
  bool on_set = false;
  double value = 0.0;
  std::vector<double> derivatives;  // one per requested multi-index
};

struct FieldGrid {
  GridSpec grid;
  std::vector<MultiIndex> derivatives;
  std::optional<double> window;
  std::vector<FieldNode> nodes;
};

/// g = f on the set, E(f) off it, on every grid node (optionally windowed).
/// Nodes within 1e-12 of an atom take the jet values; derivative components the
/// jet does not carry are NaN there.
FieldGrid assemble_g(const Extension& ext, const GridSpec& grid, const std::vector<MultiIndex>& derivatives,
                     std::optional<double> window = std::nullopt);

std::string format_field(const FieldGrid& field);

}  // namespace wext
