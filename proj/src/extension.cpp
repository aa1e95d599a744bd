#include "wext/extension.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wext/errors.hpp"
#include "wext/kdtree.hpp"
#include "wext/parallel.hpp"
#include "wext/text_io.hpp"

namespace wext {

double smooth_step(double s) {
  const double a = std::exp(-1.0 / (1.0 - s));
  const double b = std::exp(-1.0 / s);
  return a / (a + b);
}

TaylorScalar smooth_step(const TaylorScalar& s) {
  const TaylorScalar a = exp(-reciprocal(1.0 - s));
  const TaylorScalar b = exp(-reciprocal(s));
  return a / (a + b);
}

double window_profile(double radius, double R) {
  if (radius <= R) return 1.0;
  if (radius >= 2.0 * R) return 0.0;
  return smooth_step((radius - R) / R);
}

Extension::Extension(Jet jet, DoublingMeasure mu, ExtensionParams params)
    : jet_(std::make_shared<const Jet>(std::move(jet))),
      mu_(std::make_shared<const DoublingMeasure>(std::move(mu))),
      params_(params),
      top_(max_index_order(params.alpha)) {
  if (!(params_.q > 0.0)) throw std::invalid_argument("Extension: q must be positive");
  if (params_.metric.kind != MetricKind::isotropic)
    throw std::invalid_argument("Extension: only the isotropic kernel lives here; use DiskExtension");
  if (std::abs(jet_->order() - params_.alpha) > 1e-12)
    throw std::invalid_argument("Extension: jet order differs from alpha");
  const std::size_t N = mu_->size();
  if (jet_->size() != N) throw std::invalid_argument("Extension: jet base and measure support differ in size");
  for (std::size_t t = 0; t < N; ++t)
    if (jet_->point(t) != mu_->atom(t)) throw std::invalid_argument("Extension: jet base and measure support differ");
  const auto& idx = jet_->indices();
  coeff_.resize(idx.size() * N);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double inv = 1.0 / idx[k].factorial();
    const auto comp = jet_->component_at(k);
    for (std::size_t t = 0; t < N; ++t) coeff_[k * N + t] = comp[t] * inv;
  }
  set_radius_ = 0.0;
  for (const auto& a : mu_->atoms()) set_radius_ = std::max(set_radius_, euclidean(a.coords(), std::vector<double>(a.dim(), 0.0)));
  for (int m = 0; m <= top_ + 1; ++m) spaces_.push_back(std::make_shared<TaylorSpace>(mu_->dim(), m));
}

Extension Extension::with_jet(Jet other) const { return Extension(std::move(other), *mu_, {params_.q, other.order(), params_.metric}); }

const TaylorSpace& Extension::space(int order) const {
  if (order < 0 || order > top_ + 1)
    throw std::invalid_argument("Extension: truncation order " + std::to_string(order) + " exceeds floor(alpha)+1 = " +
                                std::to_string(top_ + 1));
  return *spaces_[order];
}

KdTree::Hit Extension::nearest(std::span<const double> x) const {
  if (x.size() != mu_->dim()) throw std::invalid_argument("Extension: dimension mismatch");
  return mu_->support().index().nearest(x);
}

double Extension::check_off_set(std::span<const double> x) const {
  const auto hit = nearest(x);
  if (!(hit.dist > 0.0)) throw SingularityError("kernel is singular: x coincides with atom " + std::to_string(hit.index));
  return hit.dist;
}

double Extension::h_q(std::span<const double> x) const {
  check_off_set(x);
  long double s = 0;
  for (std::size_t t = 0; t < mu_->size(); ++t)
    s += mu_->weight(t) * std::pow(euclidean(x, mu_->atom(t).coords()), -params_.q);
  return static_cast<double>(s);
}

double Extension::value(std::span<const double> x) const {
  const auto hit = nearest(x);
  if (!(hit.dist > 0.0)) throw SingularityError("kernel is singular: x coincides with atom " + std::to_string(hit.index));
  const double d = hit.dist;
  const std::size_t N = mu_->size();
  const std::size_t n = mu_->dim();
  const auto& idx = jet_->indices();
  double diff[8];
  std::vector<double> big;
  double* w = diff;
  if (n > 8) {
    big.resize(n);
    w = big.data();
  }
  auto taylor_at = [&](std::size_t t) {
    const auto tc = mu_->atom(t).coords();
    for (std::size_t i = 0; i < n; ++i) w[i] = x[i] - tc[i];
    double T = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) T += coeff_[j * N + t] * monomial(w, idx[j]);
    return T;
  };
  const double anchor = taylor_at(hit.index);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < N; ++t) {
    const double k = mu_->weight(t) * std::pow(euclidean(x, mu_->atom(t).coords()) / d, -params_.q);
    den += k;
    if (t != hit.index) num += k * (taylor_at(t) - anchor);
  }
  return anchor + num / den;
}

Extension::Sums Extension::accumulate(std::span<const double> x, int order, bool with_taylor) const {
  const auto hit = nearest(x);
  if (!(hit.dist > 0.0)) throw SingularityError("kernel is singular: x coincides with atom " + std::to_string(hit.index));
  const double d = hit.dist;
  const TaylorSpace& sp = space(order);
  const std::size_t N = mu_->size();
  const std::size_t n = mu_->dim();
  const auto& idx = jet_->indices();
  const double inv_d2 = 1.0 / (d * d);

  TaylorScalar num(sp, 0.0), den(sp, 0.0);
  std::vector<TaylorScalar> diff(n, TaylorScalar(sp, 0.0));
  // powers[i][k] = (x_i - t_i)^k
  std::vector<std::vector<TaylorScalar>> powers(n, std::vector<TaylorScalar>(top_ + 1, TaylorScalar(sp, 1.0)));
  auto taylor_at = [&](std::size_t t) {
    const auto tc = mu_->atom(t).coords();
    for (std::size_t i = 0; i < n; ++i) {
      diff[i] = TaylorScalar::variable(sp, x[i] - tc[i], i);
      for (int p = 1; p <= top_; ++p) powers[i][p] = powers[i][p - 1] * diff[i];
    }
    TaylorScalar T(sp, 0.0);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      TaylorScalar m(sp, coeff_[j * N + t]);
      for (std::size_t i = 0; i < n; ++i)
        if (idx[j][i] > 0) m = m * powers[i][idx[j][i]];
      T += m;
    }
    return T;
  };
  // Summing T_t - T_{x0} keeps constant jets exact in every derivative.
  const TaylorScalar anchor = with_taylor ? taylor_at(hit.index) : TaylorScalar(sp, 0.0);
  for (std::size_t t = 0; t < N; ++t) {
    const auto tc = mu_->atom(t).coords();
    TaylorScalar r2(sp, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      diff[i] = TaylorScalar::variable(sp, x[i] - tc[i], i);
      r2 += diff[i] * diff[i];
    }
    const TaylorScalar k = pow(r2 * inv_d2, -0.5 * params_.q) * mu_->weight(t);
    den += k;
    if (!with_taylor || t == hit.index) continue;
    num += k * (taylor_at(t) - anchor);
  }
  return {num, den, d, anchor};
}

TaylorScalar Extension::expand(std::span<const double> x, int order) const {
  const auto s = accumulate(x, order, true);
  return s.anchor + s.numerator / s.denominator;
}

TaylorScalar Extension::expand_h(std::span<const double> x, int order) const {
  const auto s = accumulate(x, order, false);
  return s.denominator * std::pow(s.d, -params_.q);
}

TaylorScalar Extension::expand_inverse_h(std::span<const double> x, int order) const {
  const auto s = accumulate(x, order, false);
  return reciprocal(s.denominator) * std::pow(s.d, params_.q);
}

double Extension::derivative(std::span<const double> x, const MultiIndex& a) const {
  if (a.dim() != mu_->dim()) throw std::invalid_argument("extend_derivative: multi-index dimension mismatch");
  return expand(x, a.order()).derivative(a);
}

void Extension::check_window(double R) const {
  if (!(R > 0.0)) throw std::invalid_argument("windowed extension: R must be positive");
  if (set_radius_ > 0.5 * R)
    throw std::invalid_argument("windowed extension: the set is not inside B(0, R/2) (max |t| = " +
                                io::format_real(set_radius_) + ")");
}

double Extension::windowed(std::span<const double> x, double R) const {
  check_window(R);
  const double r = euclidean(x, std::vector<double>(x.size(), 0.0));
  if (r >= 2.0 * R) return 0.0;
  const double phi = window_profile(r, R);
  return phi * value(x);
}

TaylorScalar Extension::expand_windowed(std::span<const double> x, double R, int order) const {
  check_window(R);
  const TaylorSpace& sp = space(order);
  const double r = euclidean(x, std::vector<double>(x.size(), 0.0));
  if (r >= 2.0 * R) return TaylorScalar(sp, 0.0);
  const TaylorScalar e = expand(x, order);
  if (r <= R) return e;
  TaylorScalar r2(sp, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto xi = TaylorScalar::variable(sp, x[i], i);
    r2 += xi * xi;
  }
  const TaylorScalar s = (sqrt(r2) - R) * (1.0 / R);
  return smooth_step(s) * e;
}

double h_q(const DoublingMeasure& mu, const ExtensionParams& params, const Point& x) {
  long double s = 0;
  bool hit = false;
  for (std::size_t t = 0; t < mu.size(); ++t) {
    const double d = euclidean(x.coords(), mu.atom(t).coords());
    if (d == 0.0) hit = true;
    s += mu.weight(t) * std::pow(d, -params.q);
  }
  if (hit) throw SingularityError("h_q: x coincides with an atom");
  return static_cast<double>(s);
}

double extend(const Jet& jet, const DoublingMeasure& mu, const ExtensionParams& params, const Point& x) {
  return Extension(jet, mu, params).value(x.coords());
}

double extend_derivative(const Jet& jet, const DoublingMeasure& mu, const ExtensionParams& params, const Point& x,
                         const MultiIndex& a) {
  return Extension(jet, mu, params).derivative(x.coords(), a);
}

double windowed_extension(const Jet& jet, const DoublingMeasure& mu, const ExtensionParams& params, double R,
                          const Point& x) {
  return Extension(jet, mu, params).windowed(x.coords(), R);
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (auto c : counts) s *= c;
  return s;
}

Point GridSpec::node(std::size_t flat) const {
  std::vector<double> c(dim());
  for (std::size_t i = dim(); i-- > 0;) {
    const std::size_t k = flat % counts[i];
    flat /= counts[i];
    c[i] = origin[i] + spacing[i] * static_cast<double>(k);
  }
  return Point(std::move(c));
}

FieldGrid assemble_g(const Extension& ext, const GridSpec& grid, const std::vector<MultiIndex>& derivatives,
                     std::optional<double> window) {
  if (grid.dim() != ext.measure().dim() || grid.spacing.size() != grid.dim() || grid.counts.size() != grid.dim())
    throw std::invalid_argument("assemble_g: grid dimension mismatch");
  int order = 0;
  for (const auto& a : derivatives) order = std::max(order, a.order());
  FieldGrid field{grid, derivatives, window, std::vector<FieldNode>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t id) {
    const Point x = grid.node(id);
    FieldNode& node = field.nodes[id];
    const auto hit = ext.nearest(x.coords());
    const double scale = 1.0 + euclidean(x.coords(), std::vector<double>(x.dim(), 0.0));
    if (hit.dist <= 1e-12 * scale) {
      node.on_set = true;
      const Jet& jet = ext.jet();
      const double phi = window ? window_profile(0.0, *window) : 1.0;  // the set sits inside the plateau
      node.value = phi * jet.value(MultiIndex::zero(x.dim()), hit.index);
      for (const auto& a : derivatives) {
        const int s = jet.slot(a);
        node.derivatives.push_back(s < 0 ? std::numeric_limits<double>::quiet_NaN() : jet.component_at(s)[hit.index]);
      }
      return;
    }
    if (derivatives.empty()) {
      node.value = window ? ext.windowed(x.coords(), *window) : ext.value(x.coords());
      return;
    }
    const TaylorScalar e = window ? ext.expand_windowed(x.coords(), *window, order) : ext.expand(x.coords(), order);
    node.value = e.value();
    for (const auto& a : derivatives) node.derivatives.push_back(e.derivative(a));
  });
  return field;
}

std::string format_field(const FieldGrid& field) {
  const auto& g = field.grid;
  std::string out = "# wext field\n";
  out += "dimension " + std::to_string(g.dim()) + "\n";
  out += "origin";
  for (double v : g.origin) out += ' ' + io::format_real(v);
  out += "\nspacing";
  for (double v : g.spacing) out += ' ' + io::format_real(v);
  out += "\ncounts";
  for (auto v : g.counts) out += ' ' + std::to_string(v);
  out += "\nwindow " + (field.window ? io::format_real(*field.window) : std::string("none"));
  out += "\nderivatives";
  for (const auto& a : field.derivatives) out += ' ' + a.str();
  out += "\n# columns: coordinates on_set value derivatives...\n";
  for (std::size_t id = 0; id < field.nodes.size(); ++id) {
    const Point x = g.node(id);
    for (std::size_t i = 0; i < x.dim(); ++i) out += io::format_real(x[i]) + ' ';
    const auto& node = field.nodes[id];
    out += node.on_set ? "1 " : "0 ";
    out += io::format_real(node.value);
    for (double v : node.derivatives) out += ' ' + io::format_real(v);
    out += '\n';
  }
  return out;
}

}  // namespace wext
