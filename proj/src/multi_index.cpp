#include "wext/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "wext/text_io.hpp"

namespace wext {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw std::invalid_argument("MultiIndex: negative entry");
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t axis) {
  std::vector<int> e(n, 0);
  e.at(axis) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : entries_)
    for (int k = 2; k <= e; ++k) f *= k;
  return f;
}

bool MultiIndex::le(const MultiIndex& other) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.entries_[i];
  return MultiIndex(std::move(e));
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  const int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  // Within an order, larger leading entries first: x^2, xy, y^2.
  return std::lexicographical_compare(b.entries_.begin(), b.entries_.end(), a.entries_.begin(), a.entries_.end());
}

std::string MultiIndex::str() const {
  std::string s;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(entries_[i]);
  }
  return s;
}

MultiIndex MultiIndex::parse(const std::string& text) {
  std::vector<int> e;
  for (const auto& part : io::split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("MultiIndex: cannot parse '" + text + "'");
    }
    if (used != part.size()) throw std::invalid_argument("MultiIndex: cannot parse '" + text + "'");
    e.push_back(v);
  }
  return MultiIndex(std::move(e));
}

std::vector<MultiIndex> indices_up_to(std::size_t n, int max_order) {
  std::vector<MultiIndex> out;
  if (max_order < 0) return out;
  std::vector<int> e(n, 0);
  // Odometer over the box [0, max_order]^n, keeping |j| <= max_order.
  for (;;) {
    if (std::accumulate(e.begin(), e.end(), 0) <= max_order) out.emplace_back(e);
    std::size_t i = 0;
    while (i < n && ++e[i] > max_order) e[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double monomial(const double* x, const MultiIndex& j) {
  double v = 1.0;
  for (std::size_t i = 0; i < j.dim(); ++i)
    for (int k = 0; k < j[i]; ++k) v *= x[i];
  return v;
}

double binomial(const MultiIndex& a, const MultiIndex& k) {
  double c = 1.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (k[i] < 0 || k[i] > a[i]) return 0.0;
    double ci = 1.0;
    for (int m = 1; m <= k[i]; ++m) ci = ci * (a[i] - k[i] + m) / m;
    c *= ci;
  }
  return c;
}

}  // namespace wext
