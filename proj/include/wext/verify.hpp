#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wext/extension.hpp"
#include "wext/geometry.hpp"
#include "wext/holo.hpp"
#include "wext/jet.hpp"
#include "wext/report.hpp"

namespace wext {

/// A jet induced from a closed-form function on a family of nested sets.
struct ExtensionFixture {
  SetKind kind = SetKind::cantor;
  std::vector<int> depths{8, 10, 12};
  SmoothFunction function = sine_function();
  std::string function_name = "sin";
  double alpha = 1.5;
  double upsilon = 0.0;  // certified upper exponent; q defaults to upsilon + alpha + 1
  double q = 0.0;        // 0 selects the default
  double scale = 1.0;    // the jet is multiplied by this
  double effective_q() const { return q > 0.0 ? q : upsilon + alpha + 1.0; }
};

/// The Cantor set with the sine jet, alpha = 1.5, upsilon = log2/log3 + 0.1.
ExtensionFixture cantor_sine_fixture();

struct CheckOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double max_growth = 0.25;  // allowed relative growth of C per refinement step
  double zero_floor = 1e-9;  // ratios below this count as exact zeros
};

/// One extension operator per fixture depth.
struct FixtureLevels {
  ExtensionFixture fixture;
  std::vector<Extension> levels;
};
FixtureLevels build_levels(const ExtensionFixture& fixture);

/// Off-set sample points on a dyadic approach ladder: x = xi + 2^-j (1 + u) v with xi an atom
/// of the coarsest level, j uniform in 1..J (2^-J >= 4 x coarsest resolution), u in [0, 1),
/// v a random unit vector. Returns the points and the xi.
struct LadderSample {
  Point x;
  Point xi;
};
std::vector<LadderSample> ladder_samples(const DoublingMeasure& coarse, std::size_t count, std::uint64_t seed);

/// |D^a E(f)(x) - D^a_x T_y f(x)| / d(x,y)^{alpha-|a|}, y the atom nearest x and the ladder atom xi.
VerificationReport check_remainder_part1(const FixtureLevels& levels, const CheckOptions& options);
/// |D^a E_alpha(f)(x) - E_{alpha-|a|}(D~^a f)(x)| / d(x,E)^{alpha-|a|}, |a| <= floor(alpha) + 1.
VerificationReport check_smartchange(const FixtureLevels& levels, const CheckOptions& options);
/// |D^a T_x E(f)(y) - D^a E(f)(y)| / d(x,y)^{alpha-|a|} over near pairs (d(x,y) <= d(x,E)/4)
/// and far pairs of off-set points.
VerificationReport check_part3_wholespace(const FixtureLevels& levels, const CheckOptions& options);

struct RestrictionOptions {
  std::vector<double> deltas{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625, 0.001953125};
  std::size_t centres = 20;
  std::size_t nodes_per_axis = 64;
  double min_slope = 0.5;
  std::uint64_t seed = 1;
};
/// For atoms xi and radii delta: |mean of D^a E(f) over grid nodes of B(xi, delta) off E - f_a(xi)|,
/// averaged over xi. The series is that average per delta; passes when the log-log slope
/// against delta is at least min_slope (or every error is below the zero floor).
VerificationReport check_restriction(const Extension& ext, const MultiIndex& a, const RestrictionOptions& options,
                                     double zero_floor = 1e-9);

/// integral over {x in B(0,R): |x-s| <= |x-t|} of d(x,{t,s})^c |x-t|^-a |x-s|^-b, in one dimension.
double conya_integral(double a, double b, double c, double t, double s, double R);
/// The integral against |t-s|^{c-a-b+1} for t = -s = delta/2 over the given deltas; passes when
/// the ratio varies by less than a factor 2. Throws unless c-a-b+1 < 0 < c-b+1.
VerificationReport check_conya(double a, double b, double c, double R, const std::vector<double>& deltas);

/// integral_0^1 (1-t)^{b-1} |1-tz|^{-a} dt.
double lemashiti_integral(double a, double b, Complex z);
/// For 0 < b < a: the integral times |1-z|^{a-b} over the zs, stable within a factor 2.
/// For b > a: the integral itself, which must stay bounded (within a factor 2 of its value at 0).
VerificationReport check_lemashiti(double a, double b, const std::vector<Complex>& zs);

struct SuiteConfig {
  std::vector<std::string> checks;  // names; see suite_checks()
  std::uint64_t seed = 7;
  std::size_t samples = 300;
};
/// Names of the checks in a named suite ("core", "extension", "numerics", "holo").
std::vector<std::string> suite_checks(const std::string& suite);
std::vector<VerificationReport> run_suite(const SuiteConfig& config);

}  // namespace wext
