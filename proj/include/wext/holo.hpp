#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "wext/geometry.hpp"
#include "wext/measure.hpp"
#include "wext/report.hpp"
#include "wext/taylor_scalar.hpp"

namespace wext {

using Complex = std::complex<double>;

/// Point of the unit circle given by its angle.
struct CirclePoint {
  double theta = 0.0;  // in [0, 2 pi)
  explicit CirclePoint(double angle);
  Complex z() const { return std::polar(1.0, theta); }
};

inline Complex to_complex(std::span<const double> p) { return {p[0], p[1]}; }

/// tau(z, w) = 1 - z conj(w).
Complex tau_ni(Complex z, Complex w);
inline Complex tau_ni(Complex z, const CirclePoint& w) { return tau_ni(z, w.z()); }

struct DiskKernelParams {
  double q = 0.5;
  double alpha = 1.0;
  /// The regime upsilon < q < 1 in which the lower bound on |h_q| is known to hold.
  bool assumption6_regime(double upsilon) const { return upsilon < q && q < 1.0; }
};

/// Circle sets live in R^2 as (cos theta, sin theta); the Euclidean distance
/// between such points is |1 - z conj(w)|.
CompactSetSample circle_set(const std::vector<double>& angles);
/// One angle (radians) per line.
CompactSetSample read_circle_set(const std::string& path);
std::string format_circle_set(const CompactSetSample& set);

/// Arc-length quadrature weights: each atom gets half the angular gap to each
/// neighbour; gaps longer than twice the median count as holes and give nothing.
DoublingMeasure arc_length_measure(const CompactSetSample& circle);

/// Carries a measure on [0, 1] to the circle by t -> angle theta0 + t (theta1 - theta0),
/// keeping the weights.
DoublingMeasure map_to_circle(const DoublingMeasure& line, double theta0, double theta1);

/// sum_i mu_i (1 - z conj(w_i))^{-q}, principal branch.
Complex h_q_ni(const DoublingMeasure& mu, double q, Complex z);

/// Holomorphic function with derivatives, used to induce complex jets.
struct HoloFunction {
  int max_order = 0;
  std::function<Complex(Complex, int)> derivative;
};
HoloFunction holo_polynomial(std::vector<Complex> coeffs);
/// (1 - z)^a on the principal branch.
HoloFunction power_profile(double a);

/// Complex jet on circle atoms: f_k for k = 0..floor(alpha), all weights 1.
struct ComplexJet {
  double order = 0.0;
  std::vector<Point> base;
  std::vector<std::vector<Complex>> components;  // components[k][atom]
  int top() const { return static_cast<int>(components.size()) - 1; }
};
ComplexJet induce_complex_jet(const HoloFunction& F, std::span<const Point> base, double alpha);

/// Zero-free certificate for h_q on the closed disk minus E, built lazily over
/// polar cells: band 0 is |z| <= 1/2, band j >= 1 is 1 - 2^-j <= |z| <= 1 - 2^-(j+1),
/// with 8 * 2^j angular sectors. A cell of radius rho about c is certified when
/// |h(c)| exceeds a bound for |h(z) - h(c)| on it (third-order Taylor terms at c
/// plus a fourth-order remainder), subdividing up to a fixed depth.
class ZeroFreeCertificate {
 public:
  static constexpr int kMaxSplit = 4;

  ZeroFreeCertificate(std::shared_ptr<const DoublingMeasure> mu, double q);

  struct Cell {
    int band = 0;
    long sector = 0;
    bool certified = false;
    Complex located;        // smallest-|h| point seen when not certified
    double min_abs_h = 0.0;  // smallest |h| at a visited centre
  };
  /// Status of the cell containing z (|z| < 1).
  Cell cell_at(Complex z) const;
  std::size_t cached_cells() const;
  /// Every uncertified cell visited so far.
  std::vector<Cell> uncertified() const;

 private:
  Cell certify(int band, long sector) const;
  bool certify_box(double r0, double r1, double t0, double t1, int depth, Complex& worst, double& worst_h) const;
  bool split(double r0, double r1, double t0, double t1, int depth, Complex& worst, double& worst_h) const;

  std::shared_ptr<const DoublingMeasure> mu_;
  double q_;
  std::vector<Complex> conj_;
  std::vector<double> weights_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, long>, Cell> cache_;
};

/// Holomorphic extension E(f)(z) = sum mu_i tau(z,w_i)^{-q} T_{w_i} f(z) / h_q(z),
/// with T_w f(z) = sum_k f_k(w) (z - w)^k / k!.
class DiskExtension {
 public:
  DiskExtension(ComplexJet jet, DoublingMeasure mu, DiskKernelParams params);

  const ComplexJet& jet() const { return *jet_; }
  const DoublingMeasure& measure() const { return *mu_; }
  const DiskKernelParams& params() const { return params_; }
  const ZeroFreeCertificate& certificate() const { return *certificate_; }

  /// Distance from z to the set (equals min |1 - z conj(w)|).
  double distance_to_set(Complex z) const;
  Complex h(Complex z) const;
  Complex value(Complex z) const;
  /// Taylor expansion in z to order m: derivative(MultiIndex{k}) is the k-th complex derivative.
  ComplexTaylor expand(Complex z, int order) const;
  Complex derivative(Complex z, int k) const;
  /// (I + N)^l E(f)(z) with N = z d/dz.
  Complex radial_derivative(Complex z, int l) const;
  /// (d/dx + i d/dy) E(f) / 2 by central differences with step h.
  double cauchy_riemann_residual(Complex z, double h) const;

 private:
  void check_point(Complex z) const;
  const TaylorSpace& space(int order) const;

  std::shared_ptr<const ComplexJet> jet_;
  std::shared_ptr<const DoublingMeasure> mu_;
  DiskKernelParams params_;
  std::shared_ptr<ZeroFreeCertificate> certificate_;
  std::vector<std::shared_ptr<TaylorSpace>> spaces_;
};

Complex extend_ni(const ComplexJet& jet, const DoublingMeasure& mu, const DiskKernelParams& params, Complex z);

struct DiskSampling {
  int radial_levels = 10;  // r = 1 - 2^-j, j = 1..radial_levels, plus the centre
  int angles = 64;
  int refinements = 3;  // each adds 4 radial levels and doubles the angles
};

/// Sampled inf of |h_q(z)| d(z,E)^q / mu(B_z), B_z = B(z0, 3 d(z,E)), over polar
/// grids of increasing refinement. Reports the inf (as C), argmin and the
/// near-zeros met by the certificate. Passes when the inf stays positive and
/// changes by less than a factor 2 across refinements.
VerificationReport check_assumption6(const DoublingMeasure& mu, double q, const DiskSampling& sampling = {});

/// Sampled sup of |E(f)^{(m)}(z)| d(z,E)^{m-alpha} along radial approach ladders
/// z = (1 - 2^-j) w towards atoms w, for each measure in `refinements` (same
/// fixture at growing depth). Points in cells the zero-free certificate cannot
/// clear are skipped and counted. Passes on refinement stability (< 25% growth).
VerificationReport check_a_alpha(const HoloFunction& F, const std::vector<DoublingMeasure>& refinements,
                                 const DiskKernelParams& params, int m, int ladder = 12, std::size_t targets = 16);

struct RadialScanRow {
  double one_minus_r;
  double mean_abs;  // mean over angles of |R^l E(f)(r e^{i theta})|
};
/// Diagnostic: growth of the radial derivative R^l = (I + N)^l towards the circle.
std::vector<RadialScanRow> radial_derivative_scan(const DiskExtension& ext, int l, int levels, int angles);

}  // namespace wext
