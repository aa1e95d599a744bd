#include "wext/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "wext/measure.hpp"
#include "wext/parallel.hpp"

namespace wext {
namespace {

constexpr double kCantorDim = 0.63092975357145743710;  // log 2 / log 3

struct Extreme {
  double ratio = 0.0;
  std::vector<double> witness;
  void offer(double r, std::vector<double> w) {
    if (r > ratio) {
      ratio = r;
      witness = std::move(w);
    }
  }
};

std::vector<double> concat(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string join(const std::vector<int>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

void describe(VerificationReport& rep, const FixtureLevels& levels, const CheckOptions& options) {
  const auto& f = levels.fixture;
  rep.param("set", to_string(f.kind));
  rep.param("depths", join(f.depths));
  rep.param("function", f.function_name);
  rep.param("alpha", f.alpha);
  rep.param("q", f.effective_q());
  rep.param("scale", f.scale);
  rep.param("samples", static_cast<double>(options.samples));
  rep.param("seed", static_cast<double>(options.seed));
  rep.param("max_growth", options.max_growth);
}

// Per-level sup over samples, reduced in sample order so the thread count never matters.
template <class Body>
void sweep(VerificationReport& rep, const FixtureLevels& levels, const std::vector<LadderSample>& samples,
           const CheckOptions& options, Body body) {
  Extreme best;
  std::size_t best_level = 0;
  for (std::size_t L = 0; L < levels.levels.size(); ++L) {
    std::vector<Extreme> per(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) { per[i] = body(L, samples[i], i); });
    Extreme level;
    for (auto& e : per) level.offer(e.ratio, std::move(e.witness));
    rep.series.push_back(level.ratio);
    if (L == 0 || level.ratio > best.ratio) {
      best = level;
      best_level = L;
    }
  }
  rep.samples = samples.size() * levels.levels.size();
  rep.sup_ratio = best.ratio;
  rep.witness = best.witness;
  rep.detail("witness_depth", static_cast<double>(levels.fixture.depths[best_level]));
  rep.pass = refinement_stable(rep.series, options.max_growth, options.zero_floor);
}

// Largest rounding allowance (in ratio units) discounted at each depth.
void note_allowance(VerificationReport& rep, const std::vector<std::vector<double>>& allowance) {
  std::ostringstream out;
  out.precision(3);
  for (std::size_t L = 0; L < allowance.size(); ++L) {
    double m = 0.0;
    for (double v : allowance[L]) m = std::max(m, v);
    out << (L ? "," : "") << m;
  }
  rep.detail("rounding_allowance", out.str());
}

void require_levels(const FixtureLevels& levels) {
  if (levels.levels.size() < 2) throw std::invalid_argument("verification needs at least two refinement depths");
}

// Rounding model for D^m E(f)(x) at distance d from the set: the kernel's m-th derivatives grow like
// (q/d)^m and multiply Taylor terms of size up to sup|f_j|.
constexpr double kRoundingKappa = 32.0;

double jet_sup(const Jet& jet) {
  double s = 0.0;
  for (std::size_t k = 0; k < jet.indices().size(); ++k)
    for (double v : jet.component_at(k)) s = std::max(s, std::abs(v));
  return s;
}

double rounding(double F, double q, double d, int m) {
  return kRoundingKappa * std::numeric_limits<double>::epsilon() * F * std::pow(1.0 + q / d, m);
}

bool off_set(const Extension& ext, std::span<const double> x) {
  double norm = 0.0;
  for (double v : x) norm = std::max(norm, std::abs(v));
  return ext.nearest(x).dist > 1e-12 * (1.0 + norm);
}

}  // namespace

ExtensionFixture cantor_sine_fixture() {
  ExtensionFixture f;
  f.upsilon = kCantorDim + 0.1;
  return f;
}

FixtureLevels build_levels(const ExtensionFixture& fixture) {
  if (fixture.depths.empty()) throw std::invalid_argument("fixture needs at least one depth");
  if (!(fixture.effective_q() > fixture.alpha)) throw std::invalid_argument("fixture q must exceed alpha");
  FixtureLevels out{fixture, {}};
  for (int depth : fixture.depths) {
    const auto set = generate_set(fixture.kind, depth);
    auto mu = build_measure(set, {depth});
    std::vector<Point> base(mu.atoms().begin(), mu.atoms().end());
    auto jet = induce_jet(fixture.function, base, fixture.alpha);
    if (fixture.scale != 1.0) jet = jet.scaled(fixture.scale);
    out.levels.emplace_back(std::move(jet), std::move(mu), ExtensionParams{fixture.effective_q(), fixture.alpha, {}});
  }
  return out;
}

std::vector<LadderSample> ladder_samples(const DoublingMeasure& coarse, std::size_t count, std::uint64_t seed) {
  const std::size_t n = coarse.dim();
  const double res = std::max(coarse.resolution(), 1e-12);
  const int J = std::max(1, static_cast<int>(std::floor(std::log2(1.0 / (4.0 * res)))));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, coarse.size() - 1);
  std::uniform_int_distribution<int> level(1, J);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<LadderSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Point& xi = coarse.atom(pick(rng));
    const double r = std::ldexp(1.0 + unit(rng), -level(rng));
    std::vector<double> v(n);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& c : v) {
        c = gauss(rng);
        norm += c * c;
      }
    } while (norm < 1e-12);
    norm = std::sqrt(norm);
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = xi[k] + r * v[k] / norm;
    out.push_back({Point(std::move(x)), xi});
  }
  return out;
}

VerificationReport check_remainder_part1(const FixtureLevels& levels, const CheckOptions& options) {
  require_levels(levels);
  VerificationReport rep;
  rep.name = "remainder_part1";
  describe(rep, levels, options);
  const auto samples = ladder_samples(levels.levels.front().measure(), options.samples, options.seed);
  const double alpha = levels.fixture.alpha;
  const auto indices = indices_up_to(levels.levels.front().measure().dim(), max_index_order(alpha));
  const double q = levels.fixture.effective_q();
  std::vector<double> sups;
  for (const auto& ext : levels.levels) sups.push_back(jet_sup(ext.jet()));
  std::vector<std::vector<double>> allowance(levels.levels.size(), std::vector<double>(samples.size()));
  sweep(rep, levels, samples, options, [&](std::size_t L, const LadderSample& s, std::size_t i) {
    const Extension& ext = levels.levels[L];
    Extreme e;
    const auto x = s.x.coords();
    if (!off_set(ext, x)) return e;
    const double dE = ext.nearest(x).dist;
    const auto E = ext.expand(x, max_index_order(alpha));
    const std::size_t ys[2] = {ext.nearest(x).index, ext.nearest(s.xi.coords()).index};
    for (std::size_t y : ys) {
      const auto& yp = ext.jet().point(y);
      const double d = euclidean(x, yp.coords());
      for (const auto& a : indices) {
        const double scale = std::pow(d, alpha - a.order());
        const double tol = rounding(sups[L], q, dE, a.order()) +
                           rounding(sups[L] * static_cast<double>(indices.size()), 0.0, 1.0, 0) *
                               std::pow(1.0 + d, max_index_order(alpha));
        const double lhs = std::abs(E.derivative(a) - taylor_shifted(ext.jet(), a, y, x));
        allowance[L][i] = std::max(allowance[L][i], tol / scale);
        e.offer(std::max(0.0, lhs - tol) / scale, concat(x, yp.coords()));
      }
    }
    return e;
  });
  note_allowance(rep, allowance);
  return rep;
}

VerificationReport check_smartchange(const FixtureLevels& levels, const CheckOptions& options) {
  require_levels(levels);
  VerificationReport rep;
  rep.name = "smartchange";
  describe(rep, levels, options);
  const auto samples = ladder_samples(levels.levels.front().measure(), options.samples, options.seed);
  const double alpha = levels.fixture.alpha;
  const int top = max_index_order(alpha) + 1;
  const auto indices = indices_up_to(levels.levels.front().measure().dim(), top);
  // Derived-jet extensions per level; empty for |a| = 0 (identical to E) and |a| > alpha (zero jet).
  std::vector<std::vector<std::optional<Extension>>> derived(levels.levels.size());
  for (std::size_t L = 0; L < levels.levels.size(); ++L) {
    for (const auto& a : indices) {
      if (a.order() == 0 || a.order() > alpha) {
        derived[L].emplace_back();
      } else {
        derived[L].emplace_back(levels.levels[L].with_jet(derive(levels.levels[L].jet(), a)));
      }
    }
  }
  const double q = levels.fixture.effective_q();
  std::vector<double> sups;
  for (const auto& ext : levels.levels) sups.push_back(jet_sup(ext.jet()));
  std::vector<std::vector<double>> allowance(levels.levels.size(), std::vector<double>(samples.size()));
  sweep(rep, levels, samples, options, [&](std::size_t L, const LadderSample& s, std::size_t i) {
    const Extension& ext = levels.levels[L];
    Extreme e;
    const auto x = s.x.coords();
    if (!off_set(ext, x)) return e;
    const auto E = ext.expand(x, top);
    const double d = ext.nearest(x).dist;
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const auto& a = indices[k];
      if (a.order() == 0) continue;
      const double rhs = derived[L][k] ? derived[L][k]->value(x) : 0.0;
      const double lhs = std::abs(E.derivative(a) - rhs);
      const double scale = std::pow(d, alpha - a.order());
      const double tol = rounding(sups[L], q, d, a.order()) + rounding(sups[L], q, d, 0);
      allowance[L][i] = std::max(allowance[L][i], tol / scale);
      std::vector<double> w(x.begin(), x.end());
      w.push_back(static_cast<double>(a.order()));
      e.offer(std::max(0.0, lhs - tol) / scale, std::move(w));
    }
    return e;
  });
  note_allowance(rep, allowance);
  return rep;
}

VerificationReport check_part3_wholespace(const FixtureLevels& levels, const CheckOptions& options) {
  require_levels(levels);
  VerificationReport rep;
  rep.name = "part3_wholespace";
  describe(rep, levels, options);
  const auto samples = ladder_samples(levels.levels.front().measure(), options.samples, options.seed);
  const std::size_t n = levels.levels.front().measure().dim();
  // Near-pair offsets: a unit direction and a fraction in [1/16, 1/4] of d(x,E).
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> frac(0.0625, 0.25);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> dirs(samples.size(), std::vector<double>(n));
  std::vector<double> fracs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& c : dirs[i]) {
        c = gauss(rng);
        norm += c * c;
      }
    } while (norm < 1e-12);
    for (auto& c : dirs[i]) c /= std::sqrt(norm);
    fracs[i] = frac(rng);
  }
  const double alpha = levels.fixture.alpha;
  const int top = max_index_order(alpha);
  const auto indices = indices_up_to(n, top);
  const double q = levels.fixture.effective_q();
  std::vector<double> sups;
  for (const auto& ext : levels.levels) sups.push_back(jet_sup(ext.jet()));
  std::vector<std::vector<double>> allowance(levels.levels.size(), std::vector<double>(samples.size()));
  sweep(rep, levels, samples, options, [&](std::size_t L, const LadderSample& s, std::size_t i) {
    const Extension& ext = levels.levels[L];
    Extreme e;
    const auto x = s.x.coords();
    if (!off_set(ext, x)) return e;
    const double dx = ext.nearest(x).dist;
    std::vector<double> near(n);
    for (std::size_t k = 0; k < n; ++k) near[k] = x[k] + fracs[i] * dx * dirs[i][k];
    const auto far = samples[(i + 1) % samples.size()].x.coords();
    const auto Ex = ext.expand(x, top);
    for (std::span<const double> y : {std::span<const double>(near), far}) {
      if (!off_set(ext, y)) continue;
      const double dxy = euclidean(x, y);
      if (dxy == 0.0) continue;
      const auto Ey = ext.expand(y, top);
      const double dy = ext.nearest(y).dist;
      for (const auto& a : indices) {
        double taylor_x = 0.0;
        double tol = rounding(sups[L], q, dy, a.order());
        for (const auto& k : indices_up_to(n, top - a.order())) {
          double mono = 1.0;
          for (std::size_t c = 0; c < n; ++c) mono *= std::pow(std::abs(y[c] - x[c]), k[c]);
          double signed_mono = 1.0;
          for (std::size_t c = 0; c < n; ++c) signed_mono *= std::pow(y[c] - x[c], k[c]);
          taylor_x += Ex.derivative(a + k) * signed_mono / k.factorial();
          tol += rounding(sups[L], q, dx, a.order() + k.order()) * mono / k.factorial();
        }
        const double lhs = std::abs(taylor_x - Ey.derivative(a));
        const double scale = std::pow(dxy, alpha - a.order());
        allowance[L][i] = std::max(allowance[L][i], tol / scale);
        e.offer(std::max(0.0, lhs - tol) / scale, concat(x, y));
      }
    }
    return e;
  });
  note_allowance(rep, allowance);
  rep.detail("near_pairs_per_depth", static_cast<double>(samples.size()));
  rep.detail("far_pairs_per_depth", static_cast<double>(samples.size()));
  return rep;
}

VerificationReport check_restriction(const Extension& ext, const MultiIndex& a, const RestrictionOptions& options,
                                     double zero_floor) {
  const double alpha = ext.params().alpha;
  if (!(a.order() < alpha)) throw std::invalid_argument("restriction check needs |a| < alpha");
  if (options.deltas.size() < 2) throw std::invalid_argument("restriction check needs at least two radii");
  const auto& mu = ext.measure();
  const std::size_t n = mu.dim();
  const std::size_t m = options.nodes_per_axis;
  VerificationReport rep;
  rep.name = "restriction";
  rep.param("a", static_cast<double>(a.order()));
  rep.param("alpha", alpha);
  rep.param("q", ext.params().q);
  rep.param("depth", static_cast<double>(mu.depth()));
  rep.param("centres", static_cast<double>(options.centres));
  rep.param("nodes_per_axis", static_cast<double>(m));
  rep.param("seed", static_cast<double>(options.seed));
  rep.param("min_slope", options.min_slope);

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, mu.size() - 1);
  std::vector<std::size_t> centres(options.centres);
  for (auto& c : centres) c = pick(rng);
  const auto slot = ext.jet().slot(a);

  std::size_t nodes_total = 1;
  for (std::size_t k = 0; k < n; ++k) nodes_total *= m;
  std::vector<double> errors;
  std::vector<double> used_deltas;
  std::size_t skipped = 0;
  Extreme worst;
  for (double delta : options.deltas) {
    std::vector<double> err(centres.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(centres.size(), [&](std::size_t c) {
      const Point& xi = mu.atom(centres[c]);
      double sum = 0.0;
      std::size_t count = 0;
      std::vector<double> x(n);
      for (std::size_t flat = 0; flat < nodes_total; ++flat) {
        std::size_t rest = flat;
        double r2 = 0.0;
        for (std::size_t k = n; k-- > 0;) {
          const double off = delta * (-1.0 + (2.0 * static_cast<double>(rest % m) + 1.0) / static_cast<double>(m));
          rest /= m;
          x[k] = xi[k] + off;
          r2 += off * off;
        }
        if (r2 > delta * delta || !off_set(ext, x)) continue;
        sum += a.order() == 0 ? ext.value(x) : ext.expand(x, a.order()).derivative(a);
        ++count;
      }
      if (count > 0) err[c] = std::abs(sum / static_cast<double>(count) - ext.jet().component_at(slot)[centres[c]]);
    });
    double total = 0.0;
    std::size_t have = 0;
    for (std::size_t c = 0; c < centres.size(); ++c) {
      if (std::isnan(err[c])) continue;
      total += err[c];
      ++have;
      worst.offer(err[c] / std::pow(delta, options.min_slope),
                  concat(mu.atom(centres[c]).coords(), std::vector<double>{delta}));
    }
    if (have == 0) {
      ++skipped;
      continue;
    }
    errors.push_back(total / static_cast<double>(have));
    used_deltas.push_back(delta);
  }
  rep.series = errors;
  rep.samples = centres.size() * used_deltas.size();
  rep.sup_ratio = worst.ratio;
  rep.witness = worst.witness;
  rep.detail("skipped_deltas", static_cast<double>(skipped));

  // Least-squares slope of log error against log delta over the nonzero errors.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] <= zero_floor) continue;
    const double lx = std::log(used_deltas[i]), ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  double slope = std::numeric_limits<double>::infinity();
  if (k >= 2) {
    const double kk = static_cast<double>(k);
    slope = (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
  }
  rep.detail("slope", slope);
  rep.detail("nonzero_errors", static_cast<double>(k));
  rep.pass = errors.size() >= 2 && k != 1 && slope >= options.min_slope;
  return rep;
}

double conya_integral(double a, double b, double c, double t, double s, double R) {
  if (t == s) throw std::invalid_argument("conya integral needs t != s");
  // B_1 is the part of [-R, R] on s's side of the midpoint; there d(x, {t,s}) = |x - s|.
  const double mid = 0.5 * (t + s);
  double lo = -R, hi = R;
  if (s < t) hi = std::min(hi, mid);
  else lo = std::max(lo, mid);
  if (!(lo < hi)) return 0.0;
  boost::math::quadrature::tanh_sinh<double> quad;
  const double gap = std::abs(t - s);
  auto side = [&](double length, double toward_t) {
    // u = |x - s| puts the singular endpoint at u = 0 exactly.
    if (!(length > 0.0)) return 0.0;
    return quad.integrate(
        [&](double u) {
          if (u <= 0.0) return 0.0;
          const double dt = toward_t > 0 ? gap - u : gap + u;
          return std::pow(u, c - b) * std::pow(dt, -a);
        },
        0.0, length);
  };
  const double dir_t = t > s ? 1.0 : -1.0;
  const double toward_len = std::clamp(dir_t > 0 ? hi - s : s - lo, 0.0, gap / 2);
  const double away_len = std::max(0.0, dir_t > 0 ? s - lo : hi - s);
  const bool s_inside = s >= lo && s <= hi;
  if (!s_inside) {
    // s outside the ball: integrate x directly over [lo, hi].
    return quad.integrate(
        [&](double x) { return std::pow(std::abs(x - s), c - b) * std::pow(std::abs(x - t), -a); }, lo, hi);
  }
  return side(toward_len, 1.0) + side(away_len, -1.0);
}

VerificationReport check_conya(double a, double b, double c, double R, const std::vector<double>& deltas) {
  const double exponent = c - a - b + 1.0;
  if (!(exponent < 0.0)) throw std::invalid_argument("conya check needs c - a - b + n < 0");
  if (!(c - b + 1.0 > 0.0)) throw std::invalid_argument("conya check needs c - b + n > 0");
  if (deltas.size() < 2) throw std::invalid_argument("conya check needs at least two separations");
  VerificationReport rep;
  rep.name = "conya";
  rep.param("n", 1.0);
  rep.param("a", a);
  rep.param("b", b);
  rep.param("c", c);
  rep.param("R", R);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta < R)) throw std::invalid_argument("conya separations must lie in (0, R)");
    const double r = conya_integral(a, b, c, delta / 2, -delta / 2, R) / std::pow(delta, exponent);
    rep.series.push_back(r);
    lo = std::min(lo, r);
    if (r > hi) {
      hi = r;
      rep.witness = {delta};
    }
  }
  rep.samples = deltas.size();
  rep.sup_ratio = hi;
  rep.detail("min_ratio", lo);
  rep.pass = std::isfinite(hi) && lo > 0.0 && hi <= 2.0 * lo;
  return rep;
}

double lemashiti_integral(double a, double b, Complex z) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("lemashiti integral needs a, b > 0");
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("lemashiti integral needs |z| < 1");
  // u = 1 - t; 1 - t z = (1 - z) + u z keeps the near-singular factor accurate.
  const Complex w = 1.0 - z;
  auto f = [&](double u) { return std::pow(u, b - 1.0) * std::pow(std::abs(w + u * z), -a); };
  boost::math::quadrature::tanh_sinh<double> quad;
  const double split = std::min(0.5, 10.0 * std::abs(w));
  return quad.integrate(f, 0.0, split) + quad.integrate(f, split, 1.0);
}

VerificationReport check_lemashiti(double a, double b, const std::vector<Complex>& zs) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("lemashiti check needs a, b > 0");
  if (a == b) throw std::invalid_argument("lemashiti check needs b != a");
  if (zs.size() < 2) throw std::invalid_argument("lemashiti check needs at least two points");
  const bool bounded_case = b > a;
  VerificationReport rep;
  rep.name = bounded_case ? "lemashiti_bounded" : "lemashiti";
  rep.param("a", a);
  rep.param("b", b);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (Complex z : zs) {
    const double I = lemashiti_integral(a, b, z);
    const double r = bounded_case ? I : I * std::pow(std::abs(1.0 - z), a - b);
    rep.series.push_back(r);
    lo = std::min(lo, r);
    if (r > hi) {
      hi = r;
      rep.witness = {z.real(), z.imag()};
    }
  }
  rep.samples = zs.size();
  rep.sup_ratio = hi;
  rep.detail("min", lo);
  if (bounded_case) {
    // |1 - t z| >= 1 - t gives the integral at most 1 / (b - a).
    rep.detail("bound", 1.0 / (b - a));
    rep.pass = std::isfinite(hi) && hi <= 1.0 / (b - a) * (1.0 + 1e-9);
  } else {
    rep.pass = std::isfinite(hi) && lo > 0.0 && hi <= 2.0 * lo;
  }
  return rep;
}

namespace {

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names{"remainder_part1", "smartchange", "part3_wholespace",
                                              "restriction",     "conya",       "lemashiti",
                                              "lemashiti_bounded", "assumption6", "a_alpha"};
  return names;
}

std::vector<Complex> approach_to_one(int kmax) {
  std::vector<Complex> zs;
  for (int k = 1; k <= kmax; ++k) zs.emplace_back(1.0 - std::pow(10.0, -k), 0.0);
  return zs;
}

}  // namespace

std::vector<std::string> suite_checks(const std::string& suite) {
  if (suite == "core") return all_checks();
  if (suite == "extension") return {"remainder_part1", "smartchange", "part3_wholespace", "restriction"};
  if (suite == "numerics") return {"conya", "lemashiti", "lemashiti_bounded"};
  if (suite == "holo") return {"assumption6", "a_alpha"};
  throw std::invalid_argument("unknown suite: " + suite);
}

std::vector<VerificationReport> run_suite(const SuiteConfig& config) {
  std::vector<std::string> names;
  for (const auto& entry : config.checks) {
    if (std::find(all_checks().begin(), all_checks().end(), entry) != all_checks().end()) {
      names.push_back(entry);
    } else {
      for (auto& n : suite_checks(entry)) names.push_back(std::move(n));
    }
  }
  std::vector<VerificationReport> out;
  if (names.empty()) return out;

  std::optional<FixtureLevels> levels;
  auto fixture = [&]() -> const FixtureLevels& {
    if (!levels) levels = build_levels(cantor_sine_fixture());
    return *levels;
  };
  const CheckOptions options{config.samples, config.seed};
  for (const auto& name : names) {
    if (name == "remainder_part1") {
      out.push_back(check_remainder_part1(fixture(), options));
    } else if (name == "smartchange") {
      out.push_back(check_smartchange(fixture(), options));
    } else if (name == "part3_wholespace") {
      out.push_back(check_part3_wholespace(fixture(), options));
    } else if (name == "restriction") {
      RestrictionOptions r;
      r.seed = config.seed;
      out.push_back(check_restriction(fixture().levels.back(), MultiIndex::zero(1), r));
    } else if (name == "conya") {
      std::vector<double> deltas;
      for (int j = 1; j <= 8; ++j) deltas.push_back(std::ldexp(1.0, -j));
      out.push_back(check_conya(1.0, 1.0, 0.5, 1.0, deltas));
    } else if (name == "lemashiti") {
      out.push_back(check_lemashiti(2.0, 1.0, approach_to_one(6)));
    } else if (name == "lemashiti_bounded") {
      out.push_back(check_lemashiti(2.0, 3.0, approach_to_one(6)));
    } else if (name == "assumption6") {
      const auto mu = arc_length_measure(generate_set(SetKind::circle_arc, 8, {0.0, 2 * std::numbers::pi, {}}));
      auto rep = check_assumption6(mu, 0.5);
      rep.param("set", "full_circle");
      rep.param("depth", 8.0);
      out.push_back(std::move(rep));
    } else if (name == "a_alpha") {
      std::vector<DoublingMeasure> refinements;
      for (int k : {6, 8, 10}) {
        refinements.push_back(
            map_to_circle(build_measure(generate_set(SetKind::cantor, k), {k}), -std::numbers::pi / 3, std::numbers::pi / 3));
      }
      auto rep = check_a_alpha(power_profile(0.25), refinements, {0.95, 0.25}, 2, 12, 8);
      rep.param("set", "cantor_on_arc");
      rep.param("function", "(1-z)^0.25");
      rep.param("depths", "6,8,10");
      out.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace wext
