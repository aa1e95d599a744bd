#include "wext/holo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wext/errors.hpp"
#include "wext/jet.hpp"
#include "wext/kdtree.hpp"
#include "wext/multi_index.hpp"
#include "wext/parallel.hpp"
#include "wext/text_io.hpp"

namespace wext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kLastBand = 40;
constexpr int kMaxOrder = 16;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

double angle_of(const Point& p) { return wrap_angle(std::atan2(p[1], p[0])); }

}  // namespace

CirclePoint::CirclePoint(double angle) : theta(wrap_angle(angle)) {
  if (!std::isfinite(angle)) throw std::invalid_argument("CirclePoint: angle must be finite");
}

Complex tau_ni(Complex z, Complex w) {
  if (std::abs(z) > 1.0 + 1e-12) throw std::invalid_argument("tau_ni: z outside the closed disk");
  return 1.0 - z * std::conj(w);
}

CompactSetSample circle_set(const std::vector<double>& angles) {
  if (angles.empty()) throw std::invalid_argument("circle_set: no angles");
  std::vector<Point> pts;
  pts.reserve(angles.size());
  for (double a : angles) {
    const CirclePoint c(a);
    pts.push_back(Point{std::cos(c.theta), std::sin(c.theta)});
  }
  return CompactSetSample(std::move(pts));
}

CompactSetSample read_circle_set(const std::string& path) {
  const auto lines = io::read_lines(path);
  if (lines.empty()) throw FormatError(path, 0, "no angles");
  std::vector<double> angles;
  for (const auto& line : lines) {
    if (line.fields.size() != 1) throw FormatError(path, line.number, "expected one angle per line");
    angles.push_back(io::parse_real(line.fields[0], path, line.number));
  }
  return circle_set(angles);
}

std::string format_circle_set(const CompactSetSample& set) {
  if (set.dim() != 2) throw std::invalid_argument("format_circle_set: not a planar set");
  std::string out = "# wext circle set: one angle (radians) per line\n";
  for (const auto& p : set.atoms()) out += io::format_real(angle_of(p)) + '\n';
  return out;
}

DoublingMeasure arc_length_measure(const CompactSetSample& circle) {
  if (circle.dim() != 2) throw std::invalid_argument("arc_length_measure: not a planar set");
  const std::size_t N = circle.size();
  std::vector<Point> atoms(circle.atoms().begin(), circle.atoms().end());
  if (N == 1) return DoublingMeasure(atoms, {1.0}, 0, circle.resolution());
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::vector<double> theta(N);
  for (std::size_t i = 0; i < N; ++i) theta[i] = angle_of(atoms[i]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return theta[a] < theta[b]; });
  std::vector<double> gap(N);  // gap[k]: from order[k] to order[k+1], cyclically
  for (std::size_t k = 0; k < N; ++k) {
    const double next = k + 1 < N ? theta[order[k + 1]] : theta[order[0]] + kTwoPi;
    gap[k] = next - theta[order[k]];
  }
  std::vector<double> sorted = gap;
  std::nth_element(sorted.begin(), sorted.begin() + N / 2, sorted.end());
  const double hole = 2.0 * sorted[N / 2];
  auto part = [&](double g) { return g > hole ? 0.0 : g; };
  std::vector<double> w(N);
  long double total = 0;
  for (std::size_t k = 0; k < N; ++k) {
    const double left = part(gap[(k + N - 1) % N]), right = part(gap[k]);
    w[order[k]] = 0.5 * (left + right);
    total += w[order[k]];
  }
  for (auto& v : w) v = static_cast<double>(v / total);
  return DoublingMeasure(atoms, w, 0, circle.resolution());
}

DoublingMeasure map_to_circle(const DoublingMeasure& line, double theta0, double theta1) {
  if (line.dim() != 1) throw std::invalid_argument("map_to_circle: measure is not on a line");
  if (!(std::abs(theta1 - theta0) < kTwoPi)) throw std::invalid_argument("map_to_circle: angular span must be below 2 pi");
  std::vector<Point> atoms;
  for (const auto& a : line.atoms()) {
    const double th = theta0 + a[0] * (theta1 - theta0);
    atoms.push_back(Point{std::cos(th), std::sin(th)});
  }
  const std::vector<double> w(line.weights().begin(), line.weights().end());
  return DoublingMeasure(std::move(atoms), w, line.depth(), 0.0);
}

Complex h_q_ni(const DoublingMeasure& mu, double q, Complex z) {
  if (mu.dim() != 2) throw std::invalid_argument("h_q_ni: measure is not on the circle");
  Complex s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Complex t = tau_ni(z, to_complex(mu.atom(i).coords()));
    if (t == 0.0) throw SingularityError("h_q_ni: z coincides with atom " + std::to_string(i));
    s += mu.weight(i) * std::pow(t, -q);
  }
  return s;
}

HoloFunction holo_polynomial(std::vector<Complex> coeffs) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  return {kMaxOrder, [coeffs, deg](Complex z, int k) {
            Complex s = 0.0;
            for (int i = deg; i >= k; --i) {
              double fall = 1.0;
              for (int r = 0; r < k; ++r) fall *= i - r;
              s = s * z + coeffs[i] * fall;
            }
            return s;
          }};
}

HoloFunction power_profile(double a) {
  return {kMaxOrder, [a](Complex z, int k) {
            double c = 1.0;
            for (int r = 0; r < k; ++r) c *= -(a - r);
            const Complex base = 1.0 - z;
            if (base == 0.0) {
              if (a - k > 0) return Complex(0.0);
              if (a - k == 0) return Complex(c);
              throw SingularityError("power_profile: derivative blows up at z = 1");
            }
            return c * std::pow(base, a - k);
          }};
}

ComplexJet induce_complex_jet(const HoloFunction& F, std::span<const Point> base, double alpha) {
  if (base.empty()) throw std::invalid_argument("induce_complex_jet: empty base");
  const int top = max_index_order(alpha);
  if (F.max_order < top) throw std::invalid_argument("induce_complex_jet: function lacks derivatives of order " + std::to_string(top));
  ComplexJet jet{alpha, {base.begin(), base.end()}, {}};
  for (int k = 0; k <= top; ++k) {
    std::vector<Complex> comp;
    comp.reserve(base.size());
    for (const auto& p : base) comp.push_back(F.derivative(to_complex(p.coords()), k));
    jet.components.push_back(std::move(comp));
  }
  return jet;
}

ZeroFreeCertificate::ZeroFreeCertificate(std::shared_ptr<const DoublingMeasure> mu, double q) : mu_(std::move(mu)), q_(q) {
  for (std::size_t i = 0; i < mu_->size(); ++i) {
    conj_.push_back(std::conj(to_complex(mu_->atom(i).coords())));
    weights_.push_back(mu_->weight(i));
  }
}

bool ZeroFreeCertificate::certify_box(double r0, double r1, double t0, double t1, int depth, Complex& worst,
                                      double& worst_h) const {
  // |h(z) - h(c)| <= sum_{k=1}^{3} |h^(k)(c)| rho^k / k! + rho^4 sup |h^(4)| / 4!, and
  // |h^(k)(z)| / k! <= sum mu_i C(q+k-1, k) |1 - z conj(w_i)|^{-q-k}.
  constexpr int K = 4;
  const Complex c = std::polar(0.5 * (r0 + r1), 0.5 * (t0 + t1));
  const double rho = 0.5 * (r1 - r0) + r1 * 0.5 * (t1 - t0);
  double binom[K + 1];
  binom[0] = 1.0;
  for (int k = 1; k <= K; ++k) binom[k] = binom[k - 1] * (q_ + k - 1) / k;
  Complex a[K] = {};
  double tail = 0.0;
  bool reachable = true;  // every atom stays outside the box
  double nearest = INFINITY;
  for (std::size_t i = 0; i < conj_.size(); ++i) {
    const Complex t = 1.0 - c * conj_[i];
    const double m = std::abs(t);
    if (m == 0.0) return depth < kMaxSplit && split(r0, r1, t0, t1, depth, worst, worst_h);
    Complex term = weights_[i] * std::polar(std::exp(-q_ * std::log(m)), -q_ * std::arg(t));
    const Complex step = conj_[i] / t;
    for (int k = 0; k < K; ++k) {
      a[k] += binom[k] * term;
      term *= step;
    }
    nearest = std::min(nearest, m);
    const double gap = m - rho;
    if (gap > 0.0)
      tail += weights_[i] * binom[K] * std::pow(gap, -q_ - K);
    else
      reachable = false;
  }
  const double ah = std::abs(a[0]);
  if (ah < worst_h) {
    worst_h = ah;
    worst = c;
  }
  double bound = tail * std::pow(rho, K);
  for (int k = 1; k < K; ++k) bound += std::abs(a[k]) * std::pow(rho, k);
  if (reachable && ah > bound) return true;
  if (depth >= kMaxSplit) return false;
  // The first-order term only halves per split; give up when the remaining
  // splits cannot bring it below |h(c)|.
  if (nearest >= 2.0 * rho && std::abs(a[1]) * rho > ah * std::ldexp(1.0, kMaxSplit - depth + 1)) return false;
  return split(r0, r1, t0, t1, depth, worst, worst_h);
}

bool ZeroFreeCertificate::split(double r0, double r1, double t0, double t1, int depth, Complex& worst,
                                double& worst_h) const {
  const double rm = 0.5 * (r0 + r1), tm = 0.5 * (t0 + t1);
  bool all = true;
  all = certify_box(r0, rm, t0, tm, depth + 1, worst, worst_h) && all;
  all = certify_box(r0, rm, tm, t1, depth + 1, worst, worst_h) && all;
  all = certify_box(rm, r1, t0, tm, depth + 1, worst, worst_h) && all;
  all = certify_box(rm, r1, tm, t1, depth + 1, worst, worst_h) && all;
  return all;
}

ZeroFreeCertificate::Cell ZeroFreeCertificate::certify(int band, long sector) const {
  const double r0 = band == 0 ? 0.0 : 1.0 - std::ldexp(1.0, -band);
  const double r1 = band == 0 ? 0.5 : (band == kLastBand ? 1.0 : 1.0 - std::ldexp(1.0, -band - 1));
  const long sectors = 8L << band;
  const double t0 = kTwoPi * static_cast<double>(sector) / static_cast<double>(sectors);
  const double t1 = kTwoPi * static_cast<double>(sector + 1) / static_cast<double>(sectors);
  Cell cell{band, sector, false, Complex(0.0), INFINITY};
  cell.certified = certify_box(r0, r1, t0, t1, 0, cell.located, cell.min_abs_h);
  return cell;
}

ZeroFreeCertificate::Cell ZeroFreeCertificate::cell_at(Complex z) const {
  const double r = std::abs(z);
  if (r > 1.0 + 1e-12) throw std::invalid_argument("zero-free certificate: z outside the closed disk");
  int band = 0;
  if (r > 0.5) {
    band = r >= 1.0 ? kLastBand : static_cast<int>(std::floor(-std::log2(1.0 - r)));
    band = std::clamp(band, 1, kLastBand);
  }
  const long sectors = 8L << band;
  long sector = static_cast<long>(std::floor(wrap_angle(std::arg(z)) / kTwoPi * static_cast<double>(sectors)));
  sector = std::clamp(sector, 0L, sectors - 1);
  const auto key = std::make_pair(band, sector);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Cell cell = certify(band, sector);
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, cell).first->second;
}

std::size_t ZeroFreeCertificate::cached_cells() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

std::vector<ZeroFreeCertificate::Cell> ZeroFreeCertificate::uncertified() const {
  std::lock_guard lock(mutex_);
  std::vector<Cell> out;
  for (const auto& [key, cell] : cache_)
    if (!cell.certified) out.push_back(cell);
  return out;
}

DiskExtension::DiskExtension(ComplexJet jet, DoublingMeasure mu, DiskKernelParams params)
    : jet_(std::make_shared<const ComplexJet>(std::move(jet))),
      mu_(std::make_shared<const DoublingMeasure>(std::move(mu))),
      params_(params) {
  if (!(params_.q > 0.0)) throw std::invalid_argument("DiskExtension: q must be positive");
  if (std::abs(jet_->order - params_.alpha) > 1e-12) throw std::invalid_argument("DiskExtension: jet order differs from alpha");
  if (mu_->dim() != 2) throw std::invalid_argument("DiskExtension: measure is not on the circle");
  if (jet_->top() != max_index_order(params_.alpha)) throw std::invalid_argument("DiskExtension: jet has the wrong number of components");
  if (jet_->base.size() != mu_->size()) throw std::invalid_argument("DiskExtension: jet base and measure support differ");
  for (std::size_t i = 0; i < mu_->size(); ++i) {
    if (jet_->base[i] != mu_->atom(i)) throw std::invalid_argument("DiskExtension: jet base and measure support differ");
    if (std::abs(std::abs(to_complex(mu_->atom(i).coords())) - 1.0) > 1e-12)
      throw std::invalid_argument("DiskExtension: atom off the unit circle");
  }
  for (const auto& comp : jet_->components)
    if (comp.size() != mu_->size()) throw std::invalid_argument("DiskExtension: component length differs from base size");
  certificate_ = std::make_shared<ZeroFreeCertificate>(mu_, params_.q);
  for (int m = 0; m <= kMaxOrder; ++m) spaces_.push_back(std::make_shared<TaylorSpace>(1, m));
}

const TaylorSpace& DiskExtension::space(int order) const {
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("DiskExtension: derivative order out of range");
  return *spaces_[order];
}

double DiskExtension::distance_to_set(Complex z) const {
  const double p[] = {z.real(), z.imag()};
  return mu_->support().index().nearest(p).dist;
}

void DiskExtension::check_point(Complex z) const {
  if (!(std::abs(z) <= 1.0 + 1e-12)) throw std::invalid_argument("DiskExtension: z outside the closed disk");
  if (!(distance_to_set(z) > 0.0)) throw SingularityError("DiskExtension: z lies on the set");
  const auto cell = certificate_->cell_at(z);
  if (!cell.certified)
    throw SingularityError("h_q may vanish near z = " + io::format_real(cell.located.real()) + " + " +
                           io::format_real(cell.located.imag()) + "i (|h_q| = " + io::format_real(cell.min_abs_h) +
                           "); the zero-free certificate fails for this region");
}

Complex DiskExtension::h(Complex z) const {
  check_point(z);
  return h_q_ni(*mu_, params_.q, z);
}

ComplexTaylor DiskExtension::expand(Complex z, int order) const {
  check_point(z);
  const TaylorSpace& sp = space(order);
  const double p[] = {z.real(), z.imag()};
  const auto hit = mu_->support().index().nearest(p);
  const double d = hit.dist;
  const ComplexTaylor Z = ComplexTaylor::variable(sp, z, 0);
  const int top = jet_->top();
  std::vector<double> inv_fact(top + 1, 1.0);
  for (int k = 1; k <= top; ++k) inv_fact[k] = inv_fact[k - 1] / k;
  auto taylor_at = [&](std::size_t i) {
    const Complex w = to_complex(mu_->atom(i).coords());
    const ComplexTaylor u = Z - w;
    ComplexTaylor T(sp, jet_->components[top][i] * inv_fact[top]);
    for (int k = top - 1; k >= 0; --k) T = T * u + jet_->components[k][i] * inv_fact[k];
    return T;
  };
  const ComplexTaylor anchor = taylor_at(hit.index);
  ComplexTaylor num(sp, 0.0), den(sp, 0.0);
  for (std::size_t i = 0; i < mu_->size(); ++i) {
    const Complex w = to_complex(mu_->atom(i).coords());
    const ComplexTaylor k = pow((1.0 - Z * std::conj(w)) * Complex(1.0 / d), -params_.q) * Complex(mu_->weight(i));
    den += k;
    if (i != hit.index) num += k * (taylor_at(i) - anchor);
  }
  return anchor + num / den;
}

Complex DiskExtension::value(Complex z) const { return expand(z, 0).value(); }

Complex DiskExtension::derivative(Complex z, int k) const { return expand(z, k).derivative(MultiIndex{k}); }

Complex DiskExtension::radial_derivative(Complex z, int l) const {
  if (l < 0) throw std::invalid_argument("radial_derivative: negative power");
  const auto e = expand(z, l);
  // N^k f = sum_i S(k, i) z^i f^(i), S the Stirling numbers of the second kind.
  std::vector<std::vector<double>> S(l + 1, std::vector<double>(l + 1, 0.0));
  S[0][0] = 1.0;
  for (int k = 1; k <= l; ++k)
    for (int i = 1; i <= k; ++i) S[k][i] = i * S[k - 1][i] + S[k - 1][i - 1];
  Complex out = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= l; ++k) {
    Complex Nk = 0.0;
    for (int i = 0; i <= k; ++i)
      if (S[k][i] != 0.0) Nk += S[k][i] * std::pow(z, i) * e.derivative(MultiIndex{i});
    out += binom * Nk;
    binom = binom * (l - k) / (k + 1);
  }
  return out;
}

double DiskExtension::cauchy_riemann_residual(Complex z, double h) const {
  const Complex i(0.0, 1.0);
  const Complex fx = (value(z + h) - value(z - h)) / (2.0 * h);
  const Complex fy = (value(z + i * h) - value(z - i * h)) / (2.0 * h);
  return 0.5 * std::abs(fx + i * fy);
}

Complex extend_ni(const ComplexJet& jet, const DoublingMeasure& mu, const DiskKernelParams& params, Complex z) {
  return DiskExtension(jet, mu, params).value(z);
}

VerificationReport check_assumption6(const DoublingMeasure& mu, double q, const DiskSampling& sampling) {
  VerificationReport rep;
  rep.name = "assumption6";
  rep.param("q", q);
  rep.param("atoms", static_cast<double>(mu.size()));
  rep.param("radial_levels", static_cast<double>(sampling.radial_levels));
  rep.param("angles", static_cast<double>(sampling.angles));
  rep.param("refinements", static_cast<double>(sampling.refinements));
  if (mu.dim() != 2) throw std::invalid_argument("check_assumption6: measure is not on the circle");
  auto shared = std::make_shared<const DoublingMeasure>(mu);
  const ZeroFreeCertificate cert(shared, q);
  double inf = INFINITY;
  for (int s = 0; s < sampling.refinements; ++s) {
    const int levels = sampling.radial_levels + 4 * s;
    const int angles = sampling.angles << s;
    std::vector<Complex> pts{Complex(0.0)};
    for (int j = 1; j <= levels; ++j)
      for (int a = 0; a < angles; ++a) pts.push_back(std::polar(1.0 - std::ldexp(1.0, -j), kTwoPi * (a + 0.5) / angles));
    std::vector<double> ratio(pts.size());
    parallel_for(pts.size(), [&](std::size_t k) {
      const double p[] = {pts[k].real(), pts[k].imag()};
      const auto hit = shared->support().index().nearest(p);
      if (!(hit.dist > 0.0)) {
        ratio[k] = INFINITY;
        return;
      }
      cert.cell_at(pts[k]);
      const double mass = shared->ball_mass(shared->atom(hit.index), 3.0 * hit.dist);
      ratio[k] = std::abs(h_q_ni(*shared, q, pts[k])) * std::pow(hit.dist, q) / mass;
    });
    double level_inf = INFINITY;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (ratio[k] < level_inf) {
        level_inf = ratio[k];
        arg = k;
      }
    rep.series.push_back(level_inf);
    rep.samples += pts.size();
    if (level_inf < inf || rep.witness.empty()) {
      inf = std::min(inf, level_inf);
      rep.witness = {pts[arg].real(), pts[arg].imag()};
    }
  }
  rep.sup_ratio = inf;
  const auto zeros = cert.uncertified();
  rep.detail("uncertified_cells", static_cast<double>(zeros.size()));
  if (!zeros.empty()) {
    auto worst = std::min_element(zeros.begin(), zeros.end(),
                                  [](const auto& a, const auto& b) { return a.min_abs_h < b.min_abs_h; });
    rep.detail("near_zero", io::format_real(worst->located.real()) + "," + io::format_real(worst->located.imag()));
    rep.detail("near_zero_abs_h", worst->min_abs_h);
  }
  const auto [lo, hi] = std::minmax_element(rep.series.begin(), rep.series.end());
  rep.pass = rep.series.size() >= 2 && *lo > 0.0 && std::isfinite(*hi) && *hi <= 2.0 * *lo;
  return rep;
}

VerificationReport check_a_alpha(const HoloFunction& F, const std::vector<DoublingMeasure>& refinements,
                                 const DiskKernelParams& params, int m, int ladder, std::size_t targets) {
  const double alpha = params.alpha;
  if (std::abs(2.0 * alpha - std::round(2.0 * alpha)) < 1e-12)
    throw std::invalid_argument("check_a_alpha: 2 alpha must not be an integer");
  if (!(m > alpha)) throw std::invalid_argument("check_a_alpha: derivative order must exceed alpha");
  if (refinements.empty() || targets == 0) throw std::invalid_argument("check_a_alpha: nothing to sample");
  VerificationReport rep;
  rep.name = "a_alpha";
  rep.param("q", params.q);
  rep.param("alpha", alpha);
  rep.param("m", static_cast<double>(m));
  rep.param("ladder", static_cast<double>(ladder));
  rep.param("targets", static_cast<double>(targets));
  std::size_t total_skipped = 0;
  for (const auto& mu : refinements) {
    const DiskExtension ext(induce_complex_jet(F, mu.atoms(), alpha), mu, params);
    std::vector<Complex> pts;
    const std::size_t N = mu.size();
    // Targets spread over the set, plus the atom closest to 1.
    std::vector<std::size_t> picks;
    for (std::size_t t = 0; t < targets; ++t) picks.push_back(t * (N - 1) / std::max<std::size_t>(1, targets - 1));
    std::size_t near_one = 0;
    for (std::size_t i = 1; i < N; ++i)
      if (std::abs(to_complex(mu.atom(i).coords()) - 1.0) < std::abs(to_complex(mu.atom(near_one).coords()) - 1.0))
        near_one = i;
    picks.push_back(near_one);
    for (std::size_t i : picks)
      for (int j = 1; j <= ladder; ++j) pts.push_back((1.0 - std::ldexp(1.0, -j)) * to_complex(mu.atom(i).coords()));
    std::vector<double> ratio(pts.size(), 0.0);
    std::vector<char> skipped(pts.size(), 0);
    parallel_for(pts.size(), [&](std::size_t k) {
      // The bound presumes |h_q| is controlled; points the certificate cannot clear are counted, not sampled.
      if (!ext.certificate().cell_at(pts[k]).certified) {
        skipped[k] = 1;
        return;
      }
      const double d = ext.distance_to_set(pts[k]);
      ratio[k] = std::abs(ext.derivative(pts[k], m)) * std::pow(d, m - alpha);
    });
    std::size_t skip = 0;
    for (char c : skipped) skip += c;
    total_skipped += skip;
    const auto it = std::max_element(ratio.begin(), ratio.end());
    rep.series.push_back(*it);
    rep.samples += pts.size() - skip;
    if (*it >= rep.sup_ratio) {
      rep.sup_ratio = *it;
      const Complex w = pts[static_cast<std::size_t>(it - ratio.begin())];
      rep.witness = {w.real(), w.imag()};
    }
  }
  rep.detail("skipped_uncertified", static_cast<double>(total_skipped));
  rep.pass = rep.samples > 0 && refinement_stable(rep.series, 0.25);
  return rep;
}

std::vector<RadialScanRow> radial_derivative_scan(const DiskExtension& ext, int l, int levels, int angles) {
  std::vector<RadialScanRow> rows;
  for (int j = 1; j <= levels; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    std::vector<double> vals(static_cast<std::size_t>(angles));
    parallel_for(vals.size(), [&](std::size_t a) {
      vals[a] = std::abs(ext.radial_derivative(std::polar(r, kTwoPi * (static_cast<double>(a) + 0.5) / angles), l));
    });
    double mean = 0.0;
    for (double v : vals) mean += v;
    rows.push_back({1.0 - r, mean / angles});
  }
  return rows;
}

}  // namespace wext
