#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "wext/errors.hpp"
#include "wext/holo.hpp"
#include "wext/measure.hpp"
#include "wext/text_io.hpp"

using namespace wext;

namespace {

constexpr double kPi = std::numbers::pi;

DoublingMeasure full_circle(int k) {
  return arc_length_measure(generate_set(SetKind::circle_arc, k, {0.0, 2 * kPi}));
}

// Arc through 1: angles in [-pi/3, pi/3].
DoublingMeasure arc_through_one(int k) {
  return arc_length_measure(generate_set(SetKind::circle_arc, k, {-kPi / 3, kPi / 3}));
}

Complex random_disk_point(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2 * kPi * u(rng));
}

}  // namespace

TEST_CASE("tau_ni examples") {
  CHECK(tau_ni(Complex(0.0), CirclePoint(1.3)) == Complex(1.0));
  const CirclePoint w(2.1);
  CHECK(std::abs(tau_ni(w.z(), w)) <= 1e-15);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const CirclePoint a(u(rng)), b(u(rng));
    CHECK(std::abs(tau_ni(a.z(), b)) == doctest::Approx(std::abs(a.z() - b.z())).epsilon(1e-12).scale(1e-12));
  }
  CHECK(CirclePoint(-kPi / 2).theta == doctest::Approx(1.5 * kPi));
}

TEST_CASE("h_q_ni examples") {
  const DoublingMeasure single({Point{0.0, 1.0}}, {1.0}, 0, 0.0);
  const Complex w(0.0, 1.0);
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.5, 0.1)})
    CHECK(std::abs(h_q_ni(single, 0.7, z) - std::pow(1.0 - z * std::conj(w), -0.7)) <= 1e-15);
  const auto mu = full_circle(6);
  CHECK(h_q_ni(mu, 0.5, Complex(0.0)) == Complex(1.0));
  const DoublingMeasure antipodal({Point{1.0, 0.0}, Point{-1.0, 0.0}}, {0.5, 0.5}, 0, 0.0);
  for (double r : {0.0, 0.3, -0.8, 0.99}) {
    const Complex h = h_q_ni(antipodal, 1.0, Complex(r));
    CHECK(h.real() == doctest::Approx(1.0 / (1.0 - r * r)).epsilon(1e-14));
    CHECK(std::abs(h.imag()) <= 1e-15);
  }
  CHECK_THROWS_AS(h_q_ni(antipodal, 1.0, Complex(1.0)), SingularityError);
}

TEST_CASE("arc-length measure") {
  const auto mu = full_circle(5);
  for (double w : mu.weights()) CHECK(w == doctest::Approx(1.0 / 32).epsilon(1e-14));
  const auto arc = arc_through_one(5);
  double total = 0;
  for (double w : arc.weights()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(arc.weight(0) == doctest::Approx(0.5 * arc.weight(1)).epsilon(1e-12));
  CHECK(arc.weight(arc.size() - 1) == doctest::Approx(arc.weight(0)).epsilon(1e-12));
}

TEST_CASE("extend_ni reproduces constants and z") {
  const auto mu = arc_through_one(6);
  const DiskKernelParams params{0.5, 1.25};
  const DiskExtension one(induce_complex_jet(holo_polynomial({1.0}), mu.atoms(), 1.25), mu, params);
  const DiskExtension id(induce_complex_jet(holo_polynomial({0.0, 1.0}), mu.atoms(), 1.25), mu, params);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const Complex z = random_disk_point(rng, 0.999);
    CHECK(std::abs(one.value(z) - 1.0) <= 1e-12);
    CHECK(std::abs(id.value(z) - z) <= 1e-10);
    CHECK(std::abs(id.derivative(z, 1) - 1.0) <= 1e-8);
    CHECK(std::abs(one.derivative(z, 3)) == 0.0);
  }
  CHECK(std::abs(extend_ni(induce_complex_jet(holo_polynomial({0.0, 1.0}), mu.atoms(), 1.25), mu, params, Complex(0.2, 0.1)) -
                 Complex(0.2, 0.1)) <= 1e-10);
  CHECK_THROWS_AS(id.value(to_complex(mu.atom(4).coords())), SingularityError);
  CHECK_THROWS_AS(id.value(Complex(1.5, 0.0)), std::invalid_argument);
}

TEST_CASE("holomorphy: Cauchy-Riemann residual is second order in h") {
  const auto mu = arc_through_one(6);
  const DiskExtension ext(induce_complex_jet(power_profile(1.25), mu.atoms(), 1.25), mu, {0.5, 1.25});
  std::mt19937_64 rng(3);
  double worst = 0, worst_ratio_dev = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z = random_disk_point(rng, 0.9);
    const double scale = std::max(1.0, std::abs(ext.derivative(z, 3)));
    const double r1 = ext.cauchy_riemann_residual(z, 1e-3);
    const double r2 = ext.cauchy_riemann_residual(z, 5e-4);
    worst = std::max(worst, r1 / scale);
    if (r1 > 1e-11) worst_ratio_dev = std::max(worst_ratio_dev, std::abs(r1 / r2 - 4.0));
  }
  MESSAGE("worst CR " << worst << " ratio dev " << worst_ratio_dev);
  CHECK(worst <= 1e-6);
  CHECK(worst_ratio_dev <= 0.1);
}

TEST_CASE("derivatives and radial derivatives of the disk extension") {
  const auto mu = full_circle(7);
  const DiskExtension ext(induce_complex_jet(holo_polynomial({1.0, -2.0, 0.5}), mu.atoms(), 2.5), mu, {0.5, 2.5});
  const Complex z(0.3, -0.4);
  CHECK(std::abs(ext.value(z) - (1.0 - 2.0 * z + 0.5 * z * z)) <= 1e-10);
  CHECK(std::abs(ext.derivative(z, 1) - (-2.0 + z)) <= 1e-8);
  CHECK(std::abs(ext.derivative(z, 3)) <= 1e-8);
  // (I + N) f = f + z f'.
  const Complex expect = ext.value(z) + z * ext.derivative(z, 1);
  CHECK(std::abs(ext.radial_derivative(z, 1) - expect) <= 1e-12);
  // (I + N)^2 f = f + 3 z f' + z^2 f''.
  const Complex e2 = ext.value(z) + 3.0 * z * ext.derivative(z, 1) + z * z * ext.derivative(z, 2);
  CHECK(std::abs(ext.radial_derivative(z, 2) - e2) <= 1e-12);
  const auto rows = radial_derivative_scan(ext, 2, 6, 32);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) CHECK(std::isfinite(r.mean_abs));
}

TEST_CASE("kernel-mass lower bound on the full circle with q = 1/2") {
  const auto rep = check_assumption6(full_circle(8), 0.5);
  MESSAGE("inf " << rep.sup_ratio << " series " << rep.series[0] << " " << rep.series[1] << " " << rep.series[2]);
  CHECK(rep.pass);
  CHECK(rep.sup_ratio > 0.0);
  CHECK(rep.series.size() == 3);
}

TEST_CASE("kernel-mass lower bound for a single atom has ratio one") {
  const DoublingMeasure single({Point{1.0, 0.0}}, {1.0}, 0, 0.0);
  const auto rep = check_assumption6(single, 2.0, {6, 16, 2});
  for (double v : rep.series) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel-mass scan on an arc with large q still reports") {
  const auto rep = check_assumption6(arc_through_one(6), 6.0, {6, 32, 2});
  MESSAGE("arc q=6 inf " << rep.sup_ratio << " pass " << rep.pass);
  CHECK(rep.samples > 0);
  CHECK(rep.series.size() == 2);
}

TEST_CASE("derivative bounds beyond alpha on a Cantor set of the circle") {
  // upsilon = log 2 / log 3 < alpha + upsilon < q < 1: the regime where the lower bound on |h_q| holds.
  const DiskKernelParams params{0.95, 0.25};
  std::vector<DoublingMeasure> levels;
  for (int k : {6, 8, 10}) levels.push_back(map_to_circle(build_measure(generate_set(SetKind::cantor, k), {k}), -kPi / 3, kPi / 3));
  const auto cst = check_a_alpha(holo_polynomial({2.0}), levels, params, 2, 10, 8);
  CHECK(cst.sup_ratio == 0.0);
  const auto rep = check_a_alpha(power_profile(0.25), levels, params, 2, 12, 8);
  MESSAGE("a_alpha series " << rep.series[0] << " " << rep.series[1] << " " << rep.series[2] << " samples " << rep.samples << " skipped " << rep.details[0].second);
  CHECK(rep.pass);
  CHECK(rep.details[0].second == "0");
  const DiskKernelParams p2{0.95, 1.25};
  const auto poly = check_a_alpha(holo_polynomial({0.3, 1.0}), levels, p2, 3, 10, 8);
  CHECK(poly.sup_ratio <= 1e-9);
  CHECK_THROWS_AS(check_a_alpha(power_profile(1.5), levels, {3.0, 1.5}, 3), std::invalid_argument);
  CHECK_THROWS_AS(check_a_alpha(power_profile(0.25), levels, params, 0), std::invalid_argument);
}

TEST_CASE("circle set files") {
  const auto dir = std::filesystem::temp_directory_path() / "wext_holo_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "arc.ang").string();
  const auto E = generate_set(SetKind::circle_arc, 4, {0.5, 1.5});
  io::write_atomic(path, format_circle_set(E));
  const auto back = read_circle_set(path);
  REQUIRE(back.size() == E.size());
  for (std::size_t i = 0; i < E.size(); ++i) {
    CHECK(back.atom(i)[0] == doctest::Approx(E.atom(i)[0]).epsilon(1e-15));
    CHECK(back.atom(i)[1] == doctest::Approx(E.atom(i)[1]).epsilon(1e-15));
  }
  io::write_atomic(path, "0.1 0.2\n");
  CHECK_THROWS_AS(read_circle_set(path), FormatError);
}
