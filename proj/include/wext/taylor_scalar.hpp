#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "wext/multi_index.hpp"

namespace wext {

/// Index layout shared by every truncated Taylor element in `nvars` variables
/// up to total order `order`. Coefficients are Taylor coefficients
/// (derivative / j!), stored in graded-lexicographic order.
class TaylorSpace {
 public:
  static constexpr std::size_t kMaxCoeffs = 56;

  TaylorSpace(std::size_t nvars, int order);

  std::size_t nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  int slot(const MultiIndex& j) const;
  std::size_t unit_slot(std::size_t axis) const { return unit_slots_[axis]; }

  struct Product {
    std::uint16_t a, b, c;  // out[c] += x[a] * y[b]
  };
  const std::vector<Product>& products() const { return products_; }

 private:
  std::size_t nvars_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> unit_slots_;
  std::vector<Product> products_;
};

/// Element of the truncated polynomial algebra over T (double or complex).
template <class T>
class BasicTaylor {
 public:
  BasicTaylor() = default;
  BasicTaylor(const TaylorSpace& space, T value) : space_(&space) {
    c_.fill(T{});
    c_[0] = value;
  }
  static BasicTaylor variable(const TaylorSpace& space, T value, std::size_t axis) {
    BasicTaylor x(space, value);
    if (space.order() > 0) x.c_[space.unit_slot(axis)] = T{1};
    return x;
  }

  const TaylorSpace& space() const { return *space_; }
  T value() const { return c_[0]; }
  T coeff(std::size_t slot) const { return c_[slot]; }
  T& coeff(std::size_t slot) { return c_[slot]; }
  /// D^j of the represented function at the expansion point.
  T derivative(const MultiIndex& j) const {
    const int s = space_->slot(j);
    if (s < 0) throw std::out_of_range("BasicTaylor: derivative beyond truncation order");
    return c_[s] * static_cast<T>(j.factorial());
  }

  BasicTaylor& operator+=(const BasicTaylor& o) {
    for (std::size_t i = 0; i < n(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BasicTaylor& operator-=(const BasicTaylor& o) {
    for (std::size_t i = 0; i < n(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BasicTaylor& operator*=(T s) {
    for (std::size_t i = 0; i < n(); ++i) c_[i] *= s;
    return *this;
  }
  BasicTaylor& operator+=(T s) {
    c_[0] += s;
    return *this;
  }
  BasicTaylor& operator*=(const BasicTaylor& o) {
    *this = *this * o;
    return *this;
  }

  friend BasicTaylor operator+(BasicTaylor a, const BasicTaylor& b) { return a += b; }
  friend BasicTaylor operator-(BasicTaylor a, const BasicTaylor& b) { return a -= b; }
  friend BasicTaylor operator-(BasicTaylor a) { return a *= T{-1}; }
  friend BasicTaylor operator*(BasicTaylor a, T s) { return a *= s; }
  friend BasicTaylor operator*(T s, BasicTaylor a) { return a *= s; }
  friend BasicTaylor operator+(BasicTaylor a, T s) { return a += s; }
  friend BasicTaylor operator-(BasicTaylor a, T s) { return a += -s; }
  friend BasicTaylor operator-(T s, BasicTaylor a) { return (a *= T{-1}) += s; }

  friend BasicTaylor operator*(const BasicTaylor& a, const BasicTaylor& b) {
    BasicTaylor out(*a.space_, T{});
    for (const auto& p : a.space_->products()) out.c_[p.c] += a.c_[p.a] * b.c_[p.b];
    return out;
  }
  friend BasicTaylor operator/(const BasicTaylor& a, const BasicTaylor& b) { return a * reciprocal(b); }
  friend BasicTaylor operator/(BasicTaylor a, T s) { return a *= (T{1} / s); }

  /// f(x) = sum_k d[k] (x - x0)^k for the scalar Taylor coefficients d of f at x0.
  template <class Coeffs>
  friend BasicTaylor compose(const BasicTaylor& x, const Coeffs& d) {
    const int m = x.space_->order();
    BasicTaylor h = x;
    h.c_[0] = T{};
    BasicTaylor out(*x.space_, d[m]);
    for (int k = m - 1; k >= 0; --k) {
      out = out * h;
      out.c_[0] += d[k];
    }
    return out;
  }

  /// Principal-branch x^r.
  friend BasicTaylor pow(const BasicTaylor& x, double r) {
    const int m = x.space_->order();
    std::array<T, 64> d{};
    const T x0 = x.c_[0];
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
      d[k] = static_cast<T>(binom) * std::pow(x0, static_cast<T>(r - k));
      binom *= (r - k) / (k + 1);
    }
    return compose(x, d);
  }
  friend BasicTaylor reciprocal(const BasicTaylor& x) {
    const int m = x.space_->order();
    std::array<T, 64> d{};
    const T inv = T{1} / x.c_[0];
    T p = inv;
    for (int k = 0; k <= m; ++k) {
      d[k] = (k % 2 == 0) ? p : -p;
      p *= inv;
    }
    return compose(x, d);
  }
  friend BasicTaylor sqrt(const BasicTaylor& x) { return pow(x, 0.5); }
  friend BasicTaylor exp(const BasicTaylor& x) {
    const int m = x.space_->order();
    std::array<T, 64> d{};
    T v = std::exp(x.c_[0]);
    for (int k = 0; k <= m; ++k) {
      d[k] = v;
      v /= static_cast<T>(k + 1);
    }
    return compose(x, d);
  }

 private:
  std::size_t n() const { return space_->size(); }

  const TaylorSpace* space_ = nullptr;
  std::array<T, TaylorSpace::kMaxCoeffs> c_{};
};

using TaylorScalar = BasicTaylor<double>;
using ComplexTaylor = BasicTaylor<std::complex<double>>;

}  // namespace wext
