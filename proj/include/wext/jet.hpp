#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wext/geometry.hpp"
#include "wext/measure.hpp"
#include "wext/multi_index.hpp"

namespace wext {

/// Largest |j| carried by a jet of order alpha: floor(alpha), so an integer
/// order keeps |j| = alpha.
int max_index_order(double alpha);

/// Family {f_j : |j| <= alpha} sampled on a finite base set.
class Jet {
 public:
  /// `components[k]` holds f_j for the k-th index of indices_up_to(n, floor(order)),
  /// one value per base point.
  Jet(double order, std::vector<Point> base, std::vector<std::vector<double>> components);

  static Jet zero(double order, std::vector<Point> base);

  double order() const { return order_; }
  std::size_t dim() const { return base_.front().dim(); }
  std::size_t size() const { return base_.size(); }
  std::span<const Point> base() const { return base_; }
  const Point& point(std::size_t i) const { return base_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Position of j among indices(); -1 if |j| exceeds the order.
  int slot(const MultiIndex& j) const;
  std::span<const double> component(const MultiIndex& j) const;
  std::span<const double> component_at(std::size_t slot) const { return components_[slot]; }
  double value(const MultiIndex& j, std::size_t atom) const { return component(j)[atom]; }

  Jet scaled(double s) const;
  Jet plus(const Jet& other) const;

 private:
  double order_;
  std::vector<Point> base_;
  std::vector<MultiIndex> indices_;
  std::vector<std::vector<double>> components_;
};

/// Closed-form function supplying D^j F for |j| <= max_order.
struct SmoothFunction {
  std::size_t dim = 1;
  int max_order = 0;
  std::function<double(std::span<const double>, const MultiIndex&)> derivative;
};

/// Polynomial in n variables with exact derivatives.
class Polynomial {
 public:
  Polynomial(std::size_t n, std::vector<std::pair<MultiIndex, double>> terms);
  /// Univariate sum_k coeffs[k] x^k.
  static Polynomial univariate(std::vector<double> coeffs);

  std::size_t dim() const { return n_; }
  int degree() const;
  double eval(std::span<const double> x) const { return derivative(x, MultiIndex::zero(n_)); }
  double derivative(std::span<const double> x, const MultiIndex& j) const;
  SmoothFunction as_function() const;

 private:
  std::size_t n_;
  std::vector<std::pair<MultiIndex, double>> terms_;
};

SmoothFunction constant_function(std::size_t n, double c);
/// F(x) = sin(x_1) (further coordinates ignored).
SmoothFunction sine_function(std::size_t n = 1);

/// f_j(t) = D^j F(t) at every base point. Throws if F lacks a needed order.
Jet induce_jet(const SmoothFunction& F, std::span<const Point> base, double alpha);

/// T_y f(x) = sum_{|j| <= alpha} f_j(y) (x - y)^j / j!, y a base index.
double taylor(const Jet& jet, std::size_t y, std::span<const double> x);

/// T^{alpha-|shift|}_y (D~^shift f)(x) without materialising the derived jet.
double taylor_shifted(const Jet& jet, const MultiIndex& shift, std::size_t y, std::span<const double> x);

/// Delta_j(y, x) = f_j(x) - D^j_x T_y f(x) for base indices y, x.
double delta(const Jet& jet, std::size_t y, std::size_t x, const MultiIndex& j);

/// (f_k) -> (f_{k+j}), of order alpha - |j|; the zero jet of order 0 when |j| > alpha.
Jet derive(const Jet& jet, const MultiIndex& j);

struct NormReport {
  std::vector<MultiIndex> indices;
  std::vector<double> sup_part;       // sup |f_j|, or ||f_j||_{L^p(mu)}
  std::vector<double> seminorm_part;  // Hoelder quotient sup, or Besov double-sum to the 1/p
  std::vector<double> raw_double_sum; // Besov only: the double sum before the 1/p power
  std::size_t excluded_pairs = 0;
  double total = 0.0;
};

/// Whitney-Lipschitz norm over all base pairs.
NormReport lip_norm(const Jet& jet);

struct BesovParams {
  double p = 2.0;
  double alpha = 1.0;
  double lambda = 0.0;
  /// Smoothness of the ambient Besov space reached by the extension.
  double beta(std::size_t n) const { return alpha + (static_cast<double>(n) - lambda) / p; }
};

/// sum_j ( ||f_j||_{L^p(mu)} + ( sum_{t != s} |Delta_j(t,s)|^p d(s,t)^{-p(alpha-|j|)+lambda}
///         mu_t mu_s / mu[t,s]^2 )^{1/p} ), over the measure's atoms (the jet's base).
NormReport besov_norm(const Jet& jet, const DoublingMeasure& mu, const BesovParams& params);

struct ReexpansionResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double scale = 0.0;  // sum of |terms|, the natural rounding scale
};

/// T_t f(x) against sum_{|l| <= alpha} (x - y)^l / l! T^{alpha-|l|}_t (D~^l f)(y).
ReexpansionResidual reexpand_check(const Jet& jet, std::size_t t, std::span<const double> y,
                                   std::span<const double> x);

std::string format_jet(const Jet& jet);
Jet read_jet(const std::string& path);

}  // namespace wext
