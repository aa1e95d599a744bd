#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "wext/dimensions.hpp"

using namespace wext;

namespace {

// Largest R-separated subset by exhaustive search over all subsets.
std::size_t exhaustive_packing(const std::vector<double>& pts, double R) {
  const std::size_t n = pts.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && std::abs(pts[i] - pts[j]) < R) ok = false;
    if (ok) best = size;
  }
  return best;
}

}  // namespace

TEST_CASE("packing count on the interval against exhaustive search") {
  const auto E = generate_set(SetKind::interval, 4);
  std::vector<double> in_ball;
  for (const auto& a : E.atoms())
    if (std::abs(a[0] - 0.5) <= 0.5) in_ball.push_back(a[0]);
  const std::size_t truth = exhaustive_packing(in_ball, 0.1);
  CHECK(truth == 9);
  const std::size_t greedy = packing_count(E, Point{0.5}, 0.1, 5.0);
  CHECK(greedy <= truth);
  CHECK(greedy >= 5);
  CHECK(greedy <= 11);
}

TEST_CASE("packing count edge cases") {
  const CompactSetSample single({Point{0.2, 0.2}});
  CHECK(packing_count(single, Point{0.2, 0.2}, 0.1, 3.0) == 1);
  const auto E = generate_set(SetKind::interval, 3);
  CHECK_THROWS_AS(packing_count(E, Point{0.5}, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(packing_count(E, Point{0.5}, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("Cantor packing at aligned scales is 2^j") {
  const auto E = generate_set(SetKind::cantor, 8);
  for (int j = 1; j <= 6; ++j) {
    const double R = std::pow(3.0, -j);
    CHECK(packing_count(E, Point{0.0}, R, 1.0 / R) == (std::size_t{1} << j));
  }
}

TEST_CASE("packing count bounds and monotonicity in R") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto kind : {SetKind::cantor, SetKind::interval}) {
    const auto E = generate_set(kind, 7);
    for (int i = 0; i < 100; ++i) {
      const Point x = E.atom(static_cast<std::size_t>(u(rng) * (E.size() - 1)));
      const double outer = 0.05 + 0.9 * u(rng);
      double k1 = 1.5 + 30 * u(rng), k2 = 1.5 + 30 * u(rng);
      if (k1 > k2) std::swap(k1, k2);
      // Same ball B(x, outer); R1 = outer/k1 >= R2 = outer/k2.
      const auto n1 = packing_count(E, x, outer / k1, k1);
      const auto n2 = packing_count(E, x, outer / k2, k2);
      CHECK(n1 <= n2);
      CHECK(n1 >= 1);
      CHECK(static_cast<double>(n2) <= 3 * k2);
    }
  }
  const auto S = generate_set(SetKind::sierpinski, 5);
  for (int i = 0; i < 50; ++i) {
    const double k = 1.5 + 20 * u(rng);
    const auto n = packing_count(S, S.atom(i), 0.5 / k, k);
    CHECK(n >= 1);
    CHECK(static_cast<double>(n) <= 9 * k * k);
  }
}

TEST_CASE("dimension estimates") {
  const double d = std::log(2.0) / std::log(3.0);
  const auto cantor = estimate_dimensions(generate_set(SetKind::cantor, 12), 64, {}, 7);
  CHECK(cantor.upper == doctest::Approx(d).epsilon(0.0).scale(1.0).epsilon(0.05 / d));
  CHECK(std::abs(cantor.upper - d) <= 0.05);
  CHECK(std::abs(cantor.lower - d) <= 0.05);
  CHECK(cantor.lower <= cantor.upper + cantor.fit_residual + 1e-12);

  const auto interval = estimate_dimensions(generate_set(SetKind::interval, 14), 64, {}, 7);
  CHECK(std::abs(interval.upper - 1.0) <= 0.05);
  CHECK(std::abs(interval.lower - 1.0) <= 0.05);
  CHECK(interval.lower >= 0.0);

  const auto point = estimate_dimensions(CompactSetSample({Point{1.0}}), 8, {}, 7);
  CHECK(point.upper == 0.0);
  CHECK(point.lower == 0.0);
}

TEST_CASE("dimension estimation is deterministic and rejects thin scale ranges") {
  const auto E = generate_set(SetKind::cantor, 9);
  const auto a = estimate_dimensions(E, 16, {}, 3);
  const auto b = estimate_dimensions(E, 16, {}, 3);
  CHECK(a.upper == b.upper);
  CHECK(a.lower == b.lower);
  CHECK(format_dimension_table(a) == format_dimension_table(b));
  CHECK_THROWS_AS(estimate_dimensions(generate_set(SetKind::cantor, 2), 4, {}, 1), std::invalid_argument);
}
