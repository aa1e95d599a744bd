#include "wext/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wext/errors.hpp"
#include "wext/parallel.hpp"
#include "wext/text_io.hpp"

namespace wext {

int max_index_order(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("jet order must be >= 0");
  return static_cast<int>(std::floor(alpha));
}

Jet::Jet(double order, std::vector<Point> base, std::vector<std::vector<double>> components)
    : order_(order), base_(std::move(base)), components_(std::move(components)) {
  if (base_.empty()) throw std::invalid_argument("Jet: empty base");
  indices_ = indices_up_to(base_.front().dim(), max_index_order(order_));
  if (components_.size() != indices_.size())
    throw std::invalid_argument("Jet: expected " + std::to_string(indices_.size()) + " components, got " +
                                std::to_string(components_.size()));
  for (const auto& c : components_) {
    if (c.size() != base_.size()) throw std::invalid_argument("Jet: component length differs from base size");
    for (double v : c)
      if (!std::isfinite(v)) throw std::invalid_argument("Jet: non-finite component value");
  }
}

Jet Jet::zero(double order, std::vector<Point> base) {
  const auto count = indices_up_to(base.front().dim(), max_index_order(order)).size();
  std::vector<std::vector<double>> comps(count, std::vector<double>(base.size(), 0.0));
  return Jet(order, std::move(base), std::move(comps));
}

int Jet::slot(const MultiIndex& j) const {
  for (std::size_t k = 0; k < indices_.size(); ++k)
    if (indices_[k] == j) return static_cast<int>(k);
  return -1;
}

std::span<const double> Jet::component(const MultiIndex& j) const {
  const int s = slot(j);
  if (s < 0) throw std::out_of_range("Jet: no component " + j.str());
  return components_[s];
}

Jet Jet::scaled(double s) const {
  auto comps = components_;
  for (auto& c : comps)
    for (auto& v : c) v *= s;
  return Jet(order_, base_, std::move(comps));
}

Jet Jet::plus(const Jet& other) const {
  if (other.order_ != order_ || other.base_ != base_) throw std::invalid_argument("Jet::plus: incompatible jets");
  auto comps = components_;
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (std::size_t a = 0; a < comps[k].size(); ++a) comps[k][a] += other.components_[k][a];
  return Jet(order_, base_, std::move(comps));
}

Polynomial::Polynomial(std::size_t n, std::vector<std::pair<MultiIndex, double>> terms)
    : n_(n), terms_(std::move(terms)) {
  for (const auto& [j, c] : terms_)
    if (j.dim() != n_) throw std::invalid_argument("Polynomial: term dimension mismatch");
}

Polynomial Polynomial::univariate(std::vector<double> coeffs) {
  std::vector<std::pair<MultiIndex, double>> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) terms.push_back({MultiIndex{static_cast<int>(k)}, coeffs[k]});
  return Polynomial(1, std::move(terms));
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [j, c] : terms_)
    if (c != 0.0) d = std::max(d, j.order());
  return d;
}

double Polynomial::derivative(std::span<const double> x, const MultiIndex& j) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    if (!j.le(m)) continue;
    // D^j x^m = m!/(m-j)! x^(m-j)
    const MultiIndex rest = m - j;
    s += c * (m.factorial() / rest.factorial()) * monomial(x.data(), rest);
  }
  return s;
}

SmoothFunction Polynomial::as_function() const {
  Polynomial copy = *this;
  return {n_, 1 << 20, [copy](std::span<const double> x, const MultiIndex& j) { return copy.derivative(x, j); }};
}

SmoothFunction constant_function(std::size_t n, double c) {
  return {n, 1 << 20, [c](std::span<const double>, const MultiIndex& j) { return j.order() == 0 ? c : 0.0; }};
}

SmoothFunction sine_function(std::size_t n) {
  return {n, 1 << 20, [](std::span<const double> x, const MultiIndex& j) {
            for (std::size_t i = 1; i < j.dim(); ++i)
              if (j[i] != 0) return 0.0;
            switch (j[0] % 4) {
              case 0: return std::sin(x[0]);
              case 1: return std::cos(x[0]);
              case 2: return -std::sin(x[0]);
              default: return -std::cos(x[0]);
            }
          }};
}

Jet induce_jet(const SmoothFunction& F, std::span<const Point> base, double alpha) {
  if (base.empty()) throw std::invalid_argument("induce_jet: empty base");
  if (base.front().dim() != F.dim) throw std::invalid_argument("induce_jet: dimension mismatch");
  const int top = max_index_order(alpha);
  if (F.max_order < top)
    throw std::invalid_argument("induce_jet: function supplies derivatives up to order " +
                                std::to_string(F.max_order) + ", jet needs " + std::to_string(top));
  const auto idx = indices_up_to(F.dim, top);
  std::vector<std::vector<double>> comps(idx.size(), std::vector<double>(base.size()));
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t a = 0; a < base.size(); ++a) comps[k][a] = F.derivative(base[a].coords(), idx[k]);
  return Jet(alpha, std::vector<Point>(base.begin(), base.end()), std::move(comps));
}

double taylor_shifted(const Jet& jet, const MultiIndex& shift, std::size_t y, std::span<const double> x) {
  const std::size_t n = jet.dim();
  double diff[8];
  std::vector<double> big;
  double* w = diff;
  if (n > 8) {
    big.resize(n);
    w = big.data();
  }
  const auto yc = jet.point(y).coords();
  for (std::size_t i = 0; i < n; ++i) w[i] = x[i] - yc[i];
  double s = 0.0;
  const auto& idx = jet.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (!shift.le(idx[k])) continue;
    const MultiIndex m = idx[k] - shift;
    s += jet.component_at(k)[y] * monomial(w, m) / m.factorial();
  }
  return s;
}

double taylor(const Jet& jet, std::size_t y, std::span<const double> x) {
  return taylor_shifted(jet, MultiIndex::zero(jet.dim()), y, x);
}

double delta(const Jet& jet, std::size_t y, std::size_t x, const MultiIndex& j) {
  if (j.order() > max_index_order(jet.order())) throw std::invalid_argument("delta: |j| exceeds the jet order");
  return jet.value(j, x) - taylor_shifted(jet, j, y, jet.point(x).coords());
}

Jet derive(const Jet& jet, const MultiIndex& j) {
  if (j.order() > max_index_order(jet.order())) return Jet::zero(0.0, std::vector<Point>(jet.base().begin(), jet.base().end()));
  const double order = jet.order() - j.order();
  const auto idx = indices_up_to(jet.dim(), max_index_order(order));
  std::vector<std::vector<double>> comps;
  comps.reserve(idx.size());
  for (const auto& k : idx) {
    const auto c = jet.component(k + j);
    comps.emplace_back(c.begin(), c.end());
  }
  return Jet(order, std::vector<Point>(jet.base().begin(), jet.base().end()), std::move(comps));
}

NormReport lip_norm(const Jet& jet) {
  if (!(jet.order() > 0.0)) throw std::invalid_argument("lip_norm: order must be positive");
  NormReport rep;
  rep.indices = jet.indices();
  const std::size_t N = jet.size();
  for (std::size_t k = 0; k < rep.indices.size(); ++k) {
    const auto& j = rep.indices[k];
    const auto comp = jet.component_at(k);
    double sup = 0.0;
    for (double v : comp) sup = std::max(sup, std::abs(v));
    const double expo = jet.order() - j.order();
    std::vector<double> row_max(N, 0.0);
    parallel_for(N, [&](std::size_t y) {
      double m = 0.0;
      for (std::size_t x = 0; x < N; ++x) {
        if (x == y) continue;
        const double d = euclidean(jet.point(x).coords(), jet.point(y).coords());
        const double r = std::abs(comp[x] - taylor_shifted(jet, j, y, jet.point(x).coords())) / std::pow(d, expo);
        m = std::max(m, r);
      }
      row_max[y] = m;
    });
    rep.sup_part.push_back(sup);
    rep.seminorm_part.push_back(*std::max_element(row_max.begin(), row_max.end()));
  }
  for (std::size_t k = 0; k < rep.indices.size(); ++k) rep.total += rep.sup_part[k] + rep.seminorm_part[k];
  return rep;
}

NormReport besov_norm(const Jet& jet, const DoublingMeasure& mu, const BesovParams& params) {
  if (!(params.p >= 1.0)) throw std::invalid_argument("besov_norm: p must be >= 1");
  if (std::abs(params.alpha - jet.order()) > 1e-12) throw std::invalid_argument("besov_norm: alpha differs from the jet order");
  if (jet.size() != mu.size()) throw std::invalid_argument("besov_norm: jet base and measure support differ");
  for (std::size_t a = 0; a < jet.size(); ++a)
    if (jet.point(a) != mu.atom(a)) throw std::invalid_argument("besov_norm: jet base and measure support differ");

  NormReport rep;
  rep.indices = jet.indices();
  const std::size_t N = jet.size();
  const std::size_t J = rep.indices.size();
  // rows[t * J + k]: contribution of base point t to the k-th double sum.
  std::vector<long double> rows(N * J, 0.0L);
  parallel_for(N, [&](std::size_t t) {
    const auto pair_mass = mu.mu_pairs_from(t);
    for (std::size_t s = 0; s < N; ++s) {
      if (s == t) continue;
      const double d = euclidean(mu.atom(t).coords(), mu.atom(s).coords());
      const double m = pair_mass[s];
      const double w = mu.weight(t) * mu.weight(s) / (m * m);
      for (std::size_t k = 0; k < J; ++k) {
        const auto& j = rep.indices[k];
        const double dl = jet.component_at(k)[s] - taylor_shifted(jet, j, t, mu.atom(s).coords());
        const double expo = -params.p * (params.alpha - j.order()) + params.lambda;
        rows[t * J + k] += std::pow(std::abs(dl), params.p) * std::pow(d, expo) * w;
      }
    }
  });
  rep.excluded_pairs = N;
  for (std::size_t k = 0; k < J; ++k) {
    long double lp = 0;
    const auto comp = jet.component_at(k);
    for (std::size_t a = 0; a < N; ++a) lp += std::pow(std::abs(comp[a]), params.p) * mu.weight(a);
    long double dbl = 0;
    for (std::size_t t = 0; t < N; ++t) dbl += rows[t * J + k];
    rep.sup_part.push_back(std::pow(static_cast<double>(lp), 1.0 / params.p));
    rep.raw_double_sum.push_back(static_cast<double>(dbl));
    rep.seminorm_part.push_back(std::pow(static_cast<double>(dbl), 1.0 / params.p));
    rep.total += rep.sup_part.back() + rep.seminorm_part.back();
  }
  return rep;
}

ReexpansionResidual reexpand_check(const Jet& jet, std::size_t t, std::span<const double> y,
                                   std::span<const double> x) {
  const std::size_t n = jet.dim();
  std::vector<double> xy(n), yt(n), xt(n);
  const auto tc = jet.point(t).coords();
  for (std::size_t i = 0; i < n; ++i) {
    xy[i] = x[i] - y[i];
    yt[i] = y[i] - tc[i];
    xt[i] = x[i] - tc[i];
  }
  ReexpansionResidual r;
  const auto& idx = jet.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double term = jet.component_at(k)[t] * monomial(xt.data(), idx[k]) / idx[k].factorial();
    r.lhs += term;
    r.scale += std::abs(term);
  }
  for (const auto& l : idx) {
    const double outer = monomial(xy.data(), l) / l.factorial();
    double inner = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (!l.le(idx[k])) continue;
      const MultiIndex m = idx[k] - l;
      const double term = jet.component_at(k)[t] * monomial(yt.data(), m) / m.factorial();
      inner += term;
      r.scale += std::abs(outer * term);
    }
    r.rhs += outer * inner;
  }
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

std::string format_jet(const Jet& jet) {
  std::string out = "# wext jet\n";
  out += "dimension " + std::to_string(jet.dim()) + "\n";
  out += "order " + io::format_real(jet.order()) + "\n";
  out += "atoms " + std::to_string(jet.size()) + "\n";
  out += "indices";
  for (const auto& j : jet.indices()) out += ' ' + j.str();
  out += '\n';
  for (std::size_t a = 0; a < jet.size(); ++a) {
    for (std::size_t i = 0; i < jet.dim(); ++i) out += io::format_real(jet.point(a)[i]) + ' ';
    for (std::size_t k = 0; k < jet.indices().size(); ++k) {
      if (k) out += ' ';
      out += io::format_real(jet.component_at(k)[a]);
    }
    out += '\n';
  }
  return out;
}

Jet read_jet(const std::string& path) {
  const auto lines = io::read_lines(path);
  if (lines.size() < 4) throw FormatError(path, 0, "truncated jet header");
  auto expect = [&](std::size_t k, const char* key) -> const std::vector<std::string>& {
    if (lines[k].fields.empty() || lines[k].fields[0] != key)
      throw FormatError(path, lines[k].number, std::string("expected '") + key + "'");
    return lines[k].fields;
  };
  const auto& dim_line = expect(0, "dimension");
  const auto& ord_line = expect(1, "order");
  const auto& cnt_line = expect(2, "atoms");
  const auto& idx_line = expect(3, "indices");
  if (dim_line.size() != 2 || ord_line.size() != 2 || cnt_line.size() != 2)
    throw FormatError(path, lines[0].number, "malformed jet header");
  const long n = io::parse_integer(dim_line[1], path, lines[0].number);
  const double order = io::parse_real(ord_line[1], path, lines[1].number);
  const long count = io::parse_integer(cnt_line[1], path, lines[2].number);
  if (n < 1 || count < 1 || order < 0) throw FormatError(path, lines[0].number, "invalid jet header values");
  const auto expected = indices_up_to(static_cast<std::size_t>(n), max_index_order(order));
  std::vector<MultiIndex> declared;
  for (std::size_t k = 1; k < idx_line.size(); ++k) {
    try {
      declared.push_back(MultiIndex::parse(idx_line[k]));
    } catch (const std::invalid_argument& e) {
      throw FormatError(path, lines[3].number, e.what());
    }
  }
  if (declared.size() != expected.size())
    throw FormatError(path, lines[3].number, "index list does not cover |j| <= order");
  std::vector<std::size_t> position(declared.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    auto it = std::find(declared.begin(), declared.end(), expected[k]);
    if (it == declared.end()) throw FormatError(path, lines[3].number, "missing index " + expected[k].str());
    position[k] = static_cast<std::size_t>(it - declared.begin());
  }
  if (static_cast<long>(lines.size()) - 4 != count)
    throw FormatError(path, lines.back().number, "atom count does not match header");
  std::vector<Point> base;
  std::vector<std::vector<double>> comps(expected.size());
  for (std::size_t r = 4; r < lines.size(); ++r) {
    const auto& f = lines[r].fields;
    if (f.size() != static_cast<std::size_t>(n) + declared.size())
      throw FormatError(path, lines[r].number, "wrong number of fields");
    std::vector<double> c;
    for (long i = 0; i < n; ++i) c.push_back(io::parse_real(f[i], path, lines[r].number));
    base.emplace_back(std::move(c));
    for (std::size_t k = 0; k < expected.size(); ++k)
      comps[k].push_back(io::parse_real(f[n + position[k]], path, lines[r].number));
  }
  return Jet(order, std::move(base), std::move(comps));
}

}  // namespace wext
