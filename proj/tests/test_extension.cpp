#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "wext/errors.hpp"
#include "wext/extension.hpp"
#include "wext/whitney.hpp"

using namespace wext;

namespace {

std::vector<Point> atoms_of(const DoublingMeasure& mu) { return {mu.atoms().begin(), mu.atoms().end()}; }

DoublingMeasure cantor_measure(int k) { return build_measure(generate_set(SetKind::cantor, k), {k}); }

const double kCantorDim = std::log(2.0) / std::log(3.0);

Jet random_jet(std::mt19937_64& rng, std::vector<Point> base, double alpha) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto idx = indices_up_to(base.front().dim(), max_index_order(alpha));
  std::vector<std::vector<double>> comps(idx.size(), std::vector<double>(base.size()));
  for (auto& c : comps)
    for (auto& v : c) v = u(rng);
  return Jet(alpha, std::move(base), std::move(comps));
}

// Five-point central difference of g along `axis` at x.
template <class G>
double fd5(const G& g, std::vector<double> x, std::size_t axis, double h) {
  auto at = [&](double s) {
    auto y = x;
    y[axis] += s;
    return g(y);
  };
  return (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("h_q closed-form examples") {
  const DoublingMeasure single({Point{0.0}}, {1.0}, 1, 0.0);
  CHECK(h_q(single, {2.0, 1.0, {}}, Point{2.0}) == doctest::Approx(0.25).epsilon(1e-15));
  const DoublingMeasure pair({Point{-1.0}, Point{1.0}}, {0.5, 0.5}, 1, 1.0);
  CHECK(h_q(pair, {1.0, 1.0, {}}, Point{0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(h_q(pair, {1.0, 1.0, {}}, Point{1.0}), SingularityError);
}

TEST_CASE("h_q on the Cantor measure against an extended-precision sum") {
  using Big = boost::multiprecision::cpp_dec_float_50;
  const auto mu = cantor_measure(10);
  for (double x : {2.0, 0.5, -0.3, 0.34}) {
    Big sum = 0;
    for (std::size_t t = 0; t < mu.size(); ++t) {
      const Big d = abs(Big(x) - Big(mu.atom(t)[0]));
      sum += Big(mu.weight(t)) * pow(d, -3);
    }
    const double expect = sum.convert_to<double>();
    CHECK(h_q(mu, {3.0, 1.0, {}}, Point{x}) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("normalization: constants are reproduced") {
  const auto mu = cantor_measure(8);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (double c : {1.0, -3.5}) {
    const Extension ext(induce_jet(constant_function(1, c), atoms_of(mu), 1.5), mu, {3.5, 1.5, {}});
    for (int i = 0; i < 200; ++i) {
      const double x[] = {u(rng)};
      CHECK(ext.value(x) == doctest::Approx(c).epsilon(1e-12));
      CHECK(std::abs(ext.derivative(x, MultiIndex{1})) <= 1e-10);
      CHECK(std::abs(ext.derivative(x, MultiIndex{2})) <= 1e-10 * std::max(1.0, ext.h_q(x)));
    }
  }
}

TEST_CASE("polynomial reproduction in values and derivatives") {
  const Polynomial P = Polynomial::univariate({1, 2, -1});
  const auto mu = cantor_measure(8);
  const ExtensionParams params = ExtensionParams::with_default_q(kCantorDim + 0.1, 2.0);
  const Extension ext(induce_jet(P.as_function(), atoms_of(mu), 2.0), mu, params);
  for (double x : {-0.7, 0.2, 0.5, 0.95, 1.6}) {
    const double xs[] = {x};
    CHECK(ext.value(xs) == doctest::Approx(P.eval(xs)).epsilon(1e-10));
    for (int a = 1; a <= 3; ++a)
      CHECK(ext.derivative(xs, MultiIndex{a}) == doctest::Approx(P.derivative(xs, MultiIndex{a})).epsilon(1e-8).scale(1.0));
  }

  const Polynomial Q(2, {{MultiIndex{0, 0}, 0.5}, {MultiIndex{1, 0}, -1.0}, {MultiIndex{1, 1}, 2.0}, {MultiIndex{0, 1}, 3.0}});
  const auto S = build_measure(generate_set(SetKind::sierpinski, 5), {5});
  const Extension ext2(induce_jet(Q.as_function(), atoms_of(S), 2.5), S, {5.0, 2.5, {}});
  for (const auto& x : {std::vector<double>{0.5, 0.5}, std::vector<double>{-0.3, 1.2}, std::vector<double>{0.26, 0.1}}) {
    CHECK(ext2.value(x) == doctest::Approx(Q.eval(x)).epsilon(1e-10));
    for (const auto& a : indices_up_to(2, 3))
      CHECK(ext2.derivative(x, a) == doctest::Approx(Q.derivative(x, a)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("derivatives agree with five-point finite differences") {
  std::mt19937_64 rng(2);
  const auto mu = cantor_measure(7);
  const Extension ext(random_jet(rng, atoms_of(mu), 1.5), mu, {3.5, 1.5, {}});
  const double h = 1e-4;
  for (double x0 : {-0.2, 0.5, 0.45, 1.3, 0.8}) {
    const std::vector<double> x{x0};
    const double d1 = ext.derivative(x, MultiIndex{1});
    const double fd1 = fd5([&](const std::vector<double>& y) { return ext.value(y); }, x, 0, h);
    CHECK(std::abs(d1 - fd1) <= 1e-5 * std::max(std::abs(d1), 1.0));
    const double d2 = ext.derivative(x, MultiIndex{2});
    const double fd2 = fd5([&](const std::vector<double>& y) { return ext.derivative(y, MultiIndex{1}); }, x, 0, h);
    CHECK(std::abs(d2 - fd2) <= 1e-5 * std::max(std::abs(d2), 1.0));
  }
  CHECK_THROWS_AS(ext.derivative(std::vector<double>{0.5}, MultiIndex{3}), std::invalid_argument);

  const auto S = build_measure(generate_set(SetKind::sierpinski, 4), {4});
  const Extension ext2(random_jet(rng, atoms_of(S), 1.5), S, {4.0, 1.5, {}});
  for (const auto& x : {std::vector<double>{0.5, 0.6}, std::vector<double>{1.2, -0.1}}) {
    const auto value = [&](const std::vector<double>& y) { return ext2.value(y); };
    const auto dx = [&](const std::vector<double>& y) { return ext2.derivative(y, MultiIndex{1, 0}); };
    const double a = ext2.derivative(x, MultiIndex{0, 1});
    CHECK(std::abs(a - fd5(value, x, 1, h)) <= 1e-5 * std::max(std::abs(a), 1.0));
    const double b = ext2.derivative(x, MultiIndex{1, 1});
    CHECK(std::abs(b - fd5(dx, x, 1, h)) <= 1e-5 * std::max(std::abs(b), 1.0));
  }
}

TEST_CASE("sine jet: the extension stays within C d(x,E)^alpha of the nearest Taylor polynomial") {
  std::vector<double> constants;
  for (int k : {7, 9}) {
    const auto mu = cantor_measure(k);
    const Extension ext(induce_jet(sine_function(), atoms_of(mu), 1.5), mu, {3.5, 1.5, {}});
    const WhitneyBaseline whitney(ext.jet());
    double C = 0, Cw = 0;
    for (int i = 0; i <= 400; ++i) {
      const double xs[] = {-0.5 + 2.0 * i / 400};
      const auto hit = ext.nearest(xs);
      if (hit.dist < std::pow(3.0, -6)) continue;
      const double ref = taylor(ext.jet(), hit.index, xs);
      const double scale = std::pow(hit.dist, 1.5);
      C = std::max(C, std::abs(ext.value(xs) - ref) / scale);
      const auto w = whitney.evaluate(xs);
      CHECK(w.partition_sum == doctest::Approx(1.0).epsilon(1e-12));
      Cw = std::max(Cw, std::abs(w.value - ext.value(xs)) / scale);
    }
    CHECK(std::isfinite(C));
    CHECK(std::isfinite(Cw));
    constants.push_back(C);
    constants.push_back(Cw);
  }
  CHECK(std::abs(constants[2] - constants[0]) <= 0.25 * constants[0]);
  CHECK(std::abs(constants[3] - constants[1]) <= 0.25 * constants[1]);
}

TEST_CASE("kernel moment bound with a refinement-stable constant") {
  const double q = ExtensionParams::with_default_q(kCantorDim + 0.1, 1.5).q;
  std::vector<double> sups;
  for (int k : {8, 10}) {
    const auto mu = cantor_measure(k);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    std::uniform_int_distribution<std::size_t> pick(0, mu.size() - 1);
    double sup = 0;
    for (int i = 0; i < 300; ++i) {
      const Point x{u(rng)};
      const auto x0 = nearest_point(x, mu.support());
      if (x0.dist < std::pow(3.0, -7)) continue;
      const std::size_t t = pick(rng);
      for (double a : {0.0, 0.5, 1.5}) {
        double lhs = 0;
        for (std::size_t y = 0; y < mu.size(); ++y)
          lhs += mu.weight(y) * std::pow(distance(mu.atom(y), mu.atom(t)), a) * std::pow(distance(x, mu.atom(y)), -q);
        const double rhs = std::pow(distance(mu.atom(t), x), a) * std::pow(x0.dist, -q) * mu.ball_mass(x0.point, 3 * x0.dist);
        sup = std::max(sup, lhs / rhs);
      }
    }
    CHECK(std::isfinite(sup));
    sups.push_back(sup);
  }
  CHECK(std::abs(sups[1] - sups[0]) <= 0.25 * sups[0]);
}

TEST_CASE("derivatives of 1/h_q satisfy the product recursion") {
  const auto S = build_measure(generate_set(SetKind::sierpinski, 4), {4});
  std::mt19937_64 rng(4);
  const Extension ext(random_jet(rng, atoms_of(S), 1.5), S, {4.0, 1.5, {}});
  for (const auto& x : {std::vector<double>{0.5, 0.6}, std::vector<double>{1.2, -0.1}, std::vector<double>{0.25, 0.2}}) {
    const auto h = ext.expand_h(x, 2);
    const auto inv = ext.expand_inverse_h(x, 2);
    for (const auto& a : indices_up_to(2, 2)) {
      if (a.order() == 0) continue;
      double sum = 0, scale = 0;
      for (const auto& b : indices_up_to(2, a.order())) {
        if (!b.le(a)) continue;
        const double term = binomial(a, b) * inv.derivative(b) * h.derivative(a - b);
        sum += term;
        scale += std::abs(term);
      }
      CHECK(std::abs(sum) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("windowed extension") {
  const auto mu = cantor_measure(6);
  const Extension ext(induce_jet(constant_function(1, 1.0), atoms_of(mu), 1.5), mu, {3.5, 1.5, {}});
  const double R = 2.0;
  for (double x : {-1.9, 0.5, 1.7}) {
    const double xs[] = {x};
    CHECK(ext.windowed(xs, R) == ext.value(xs));
  }
  for (double x : {4.0, -4.5, 7.0}) {
    const double xs[] = {x};
    CHECK(ext.windowed(xs, R) == 0.0);
  }
  // g(1-s) / (g(1-s) + g(s)) written out with g(t) = exp(-1/t).
  for (double r : {2.6, 3.0, 3.5}) {
    const double s = (r - R) / R;
    const double expect = std::exp(-1 / (1 - s)) / (std::exp(-1 / (1 - s)) + std::exp(-1 / s));
    const double xs[] = {r};
    CHECK(ext.windowed(xs, R) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ext.windowed(xs, R) > 0.0);
    CHECK(ext.windowed(xs, R) < 1.0);
  }
  const double mid[] = {1.5 * R};
  CHECK(ext.windowed(mid, R) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ext.windowed(mid, 1.0), std::invalid_argument);
  // Derivatives of the windowed field against finite differences.
  const double h = 1e-4;
  const std::vector<double> x{3.1};
  const double d = ext.expand_windowed(x, R, 1).derivative(MultiIndex{1});
  const double fd = fd5([&](const std::vector<double>& y) { return ext.windowed(y, R); }, x, 0, h);
  CHECK(d == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("Whitney baseline: partition of unity and polynomial reproduction") {
  const auto S = build_measure(generate_set(SetKind::sierpinski, 4), {4});
  const Polynomial Q(2, {{MultiIndex{0, 0}, 0.5}, {MultiIndex{2, 0}, -1.0}, {MultiIndex{1, 1}, 2.0}});
  const WhitneyBaseline one(induce_jet(constant_function(2, 1.0), atoms_of(S), 1.0));
  const WhitneyBaseline poly(induce_jet(Q.as_function(), atoms_of(S), 2.0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    const auto a = one.evaluate(x);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.partition_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.cubes >= 1);
    const auto c = one.cube_of(x);
    CHECK(one.is_whitney(c));
    CHECK(poly.evaluate(x).value == doctest::Approx(Q.eval(x)).epsilon(1e-10).scale(1.0));
  }
  CHECK_THROWS_AS(one.evaluate(S.atom(3).coords()), SingularityError);
}

TEST_CASE("assemble_g dispatches node by node") {
  const auto mu = build_measure(generate_set(SetKind::interval, 4), {4});
  const Extension ext(induce_jet(sine_function(), atoms_of(mu), 1.5), mu, {3.0, 1.5, {}});
  const std::vector<MultiIndex> derivs{MultiIndex{1}, MultiIndex{2}};

  const GridSpec off{{-1.03}, {0.5}, {3}};
  const auto pure = assemble_g(ext, off, derivs);
  for (std::size_t i = 0; i < off.size(); ++i) {
    const auto x = off.node(i);
    CHECK_FALSE(pure.nodes[i].on_set);
    CHECK(pure.nodes[i].value == ext.expand(x.coords(), 2).value());
  }

  const GridSpec mixed{{-0.25}, {1.0 / 32}, {50}};
  const auto g = assemble_g(ext, mixed, derivs, 2.0);
  std::size_t on = 0;
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    const auto x = mixed.node(i);
    const auto hit = ext.nearest(x.coords());
    if (hit.dist <= 1e-12) {
      ++on;
      CHECK(g.nodes[i].on_set);
      CHECK(g.nodes[i].value == ext.jet().value(MultiIndex{0}, hit.index));
      CHECK(g.nodes[i].derivatives[0] == ext.jet().value(MultiIndex{1}, hit.index));
      CHECK(std::isnan(g.nodes[i].derivatives[1]));
    } else {
      CHECK_FALSE(g.nodes[i].on_set);
      CHECK(g.nodes[i].value == ext.expand_windowed(x.coords(), 2.0, 2).value());
      for (std::size_t d = 0; d < derivs.size(); ++d)
        CHECK(g.nodes[i].derivatives[d] == ext.expand_windowed(x.coords(), 2.0, 2).derivative(derivs[d]));
    }
  }
  CHECK(on == mu.size());
  CHECK(format_field(g).rfind("# wext field", 0) == 0);
}
