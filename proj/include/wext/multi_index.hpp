#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace wext {

/// Element of N^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  static MultiIndex zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(std::size_t n, std::size_t axis);

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  /// |j|
  int order() const;
  /// j!
  double factorial() const;
  /// Componentwise j <= other.
  bool le(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;

  /// Graded-lexicographic: lower total order first.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  /// "2" in one dimension, "1,0,2" otherwise.
  std::string str() const;
  static MultiIndex parse(const std::string& text);

 private:
  std::vector<int> entries_;
};

/// All j in N^n with |j| <= max_order, graded-lexicographic order.
std::vector<MultiIndex> indices_up_to(std::size_t n, int max_order);

/// prod_i x_i^{j_i}
double monomial(const double* x, const MultiIndex& j);

/// Binomial coefficient prod_i C(a_i, k_i).
double binomial(const MultiIndex& a, const MultiIndex& k);

}  // namespace wext
