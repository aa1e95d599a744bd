// Acceptance suite: one PASS/FAIL line per criterion. argv[1] is the wext executable.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "wext/dimensions.hpp"
#include "wext/extension.hpp"
#include "wext/holo.hpp"
#include "wext/jet.hpp"
#include "wext/measure.hpp"
#include "wext/parallel.hpp"
#include "wext/verify.hpp"

using namespace wext;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);

struct Outcome {
  bool pass = false;
  std::string summary;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

DoublingMeasure cantor_measure(int depth) { return build_measure(generate_set(SetKind::cantor, depth), {depth}); }

Jet jet_on(const DoublingMeasure& mu, const SmoothFunction& F, double alpha) {
  std::vector<Point> base(mu.atoms().begin(), mu.atoms().end());
  return induce_jet(F, base, alpha);
}

Outcome normalization() {
  const auto t0 = Clock::now();
  const auto mu = cantor_measure(12);
  const Extension ext(jet_on(mu, constant_function(1, 1.0), 1.5), mu, ExtensionParams::with_default_q(kCantorDim + 0.1, 1.5));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  double worst = 0.0;
  int evaluated = 0;
  while (evaluated < 1000) {
    const double x[1] = {u(rng)};
    if (ext.nearest(x).dist == 0.0) continue;
    worst = std::max(worst, std::abs(ext.value(x) - 1.0));
    ++evaluated;
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 5.0, "max |E(1) - 1| = " + fmt(worst) + " over 1000 points, " + fmt(secs) + " s"};
}

Outcome polynomial_reproduction() {
  const auto P = Polynomial::univariate({1.0, 2.0, -1.0});
  const auto mu = cantor_measure(12);
  const Extension ext(jet_on(mu, P.as_function(), 2.0), mu, {3.5, 2.0, {}});
  const MultiIndex d1{std::vector<int>{1}}, d2{std::vector<int>{2}};
  double e0 = 0.0, e1 = 0.0, e2 = 0.0, far2 = 0.0, worst_x = 0.0, worst_d = 0.0;
  for (int k = 0; k <= 300; ++k) {
    const double x[1] = {-1.0 + 0.01 * k};
    const double d = ext.nearest(x).dist;
    if (d <= 1e-12) continue;
    const auto T = ext.expand(x, 2);
    e0 = std::max(e0, std::abs(T.value() - P.eval(x)));
    e1 = std::max(e1, std::abs(T.derivative(d1) - P.derivative(x, d1)));
    const double err2 = std::abs(T.derivative(d2) - P.derivative(x, d2));
    if (err2 > e2) {
      e2 = err2;
      worst_x = x[0];
      worst_d = d;
    }
    if (d >= 1e-3) far2 = std::max(far2, err2);
  }
  return {e0 <= 1e-10 && e1 <= 1e-8 && e2 <= 1e-8,
          "grid [-1,2] step 0.01: value " + fmt(e0) + ", P' " + fmt(e1) + ", P'' " + fmt(e2) + " (worst at x = " +
              fmt(worst_x) + ", d(x,E) = " + fmt(worst_d) + "); P'' on nodes with d(x,E) >= 1e-3: " + fmt(far2)};
}

Outcome reexpansion_identity() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> order(0.0, 4.0);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    const double alpha = order(rng);
    std::vector<Point> base;
    for (int i = 0; i < 3; ++i) {
      std::vector<double> c(n);
      for (auto& v : c) v = u(rng);
      base.emplace_back(std::move(c));
    }
    const auto indices = indices_up_to(n, max_index_order(alpha));
    std::vector<std::vector<double>> comps(indices.size(), std::vector<double>(base.size()));
    for (auto& c : comps)
      for (auto& v : c) v = u(rng);
    const Jet jet(alpha, base, comps);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const auto r = reexpand_check(jet, 0, y, x);
    worst = std::max(worst, r.residual / std::max(r.scale, 1e-300));
  }
  return {worst <= 1e-12, "max relative residual " + fmt(worst) + " over 1000 draws"};
}

Outcome dimension_recovery() {
  auto t0 = Clock::now();
  const auto cantor = estimate_dimensions(generate_set(SetKind::cantor, 12), 64, {}, 7);
  const double t_cantor = seconds_since(t0);
  t0 = Clock::now();
  const auto interval = estimate_dimensions(generate_set(SetKind::interval, 14), 64, {}, 7);
  const double t_interval = seconds_since(t0);
  const bool ok = std::abs(cantor.upper - kCantorDim) <= 0.05 && std::abs(cantor.lower - kCantorDim) <= 0.05 &&
                  std::abs(interval.upper - 1.0) <= 0.05 && std::abs(interval.lower - 1.0) <= 0.05 && t_cantor < 30.0 &&
                  t_interval < 30.0;
  return {ok, "Cantor " + fmt(cantor.upper) + "/" + fmt(cantor.lower) + " (" + fmt(t_cantor) + " s), interval " +
                  fmt(interval.upper) + "/" + fmt(interval.lower) + " (" + fmt(t_interval) + " s)"};
}

Outcome measure_certification() {
  const auto mu = cantor_measure(12);
  CertifyOptions opt;
  opt.trials = 10000;
  opt.seed = 1;
  opt.threshold = 16.0;
  const auto c = certify(mu, kCantorDim + 0.1, kCantorDim - 0.1, opt);
  return {c.pass && c.samples == 10000 && c.c_up <= 16.0 && c.c_low >= 1.0 / 16.0,
          "c_up " + fmt(c.c_up) + ", c_low " + fmt(c.c_low) + " over " + std::to_string(c.samples) + " samples"};
}

Outcome remainder_bounds() {
  const auto sine = build_levels(cantor_sine_fixture());
  CheckOptions opt;
  opt.samples = 1000;
  opt.seed = 1;
  auto poly_fixture = cantor_sine_fixture();
  poly_fixture.function = Polynomial::univariate({1.0, 2.0, -1.0}).as_function();
  poly_fixture.function_name = "1+2x-x^2";
  poly_fixture.alpha = 2.0;
  const auto poly = build_levels(poly_fixture);
  CheckOptions popt = opt;
  popt.samples = 300;
  bool ok = true;
  std::string summary;
  using Check = VerificationReport (*)(const FixtureLevels&, const CheckOptions&);
  for (Check check : {Check(check_remainder_part1), Check(check_smartchange), Check(check_part3_wholespace)}) {
    const auto s = check(sine, opt);
    const auto p = check(poly, popt);
    ok = ok && s.pass && s.series.size() == 3 && std::isfinite(s.sup_ratio) && p.sup_ratio <= 1e-9;
    summary += s.name + " C " + fmt(s.series[0]) + "->" + fmt(s.series[1]) + "->" + fmt(s.series[2]) +
               (s.pass ? "" : " (unstable)") + ", poly " + fmt(p.sup_ratio) + "; ";
  }
  return {ok, summary};
}

Outcome restriction() {
  auto f = cantor_sine_fixture();
  f.depths = {12};
  const auto levels = build_levels(f);
  RestrictionOptions opt;
  opt.centres = 20;
  const auto rep = check_restriction(levels.levels.front(), MultiIndex::zero(1), opt);
  std::string slope;
  for (const auto& [k, v] : rep.details)
    if (k == "slope") slope = v;
  return {rep.pass && std::stod(slope) >= 0.5, "log-log slope " + slope + " over delta = 2^-3..2^-9 at 20 centres"};
}

Outcome besov_stability() {
  const double alpha = 1.5, R = 2.0;
  GridSpec grid{{-4.5}, {0.01}, {901}};
  std::vector<double> norms;
  double lambda = 0.0;
  for (int depth : {10, 12}) {
    const auto mu = cantor_measure(depth);
    const Extension ext(jet_on(mu, sine_function(), alpha), mu, ExtensionParams::with_default_q(kCantorDim + 0.1, alpha));
    const auto field = assemble_g(ext, grid, {MultiIndex{std::vector<int>{1}}}, R);
    std::vector<Point> nodes;
    std::vector<std::vector<double>> comps(2);
    for (std::size_t i = 0; i < field.nodes.size(); ++i) {
      nodes.push_back(grid.node(i));
      comps[0].push_back(field.nodes[i].value);
      comps[1].push_back(field.nodes[i].derivatives[0]);
    }
    const Jet gjet(alpha, nodes, comps);
    const DoublingMeasure lebesgue(nodes, std::vector<double>(nodes.size(), 1.0 / static_cast<double>(nodes.size())), 0,
                                   grid.spacing[0]);
    if (lambda == 0.0) {
      CertifyOptions co;
      co.trials = 10000;
      const auto c = certify(lebesgue, 1.1, 0.9, co);
      if (!c.pass) return {false, "grid measure fails certification with gamma 1.1, lambda 0.9"};
      lambda = 0.9;
    }
    norms.push_back(besov_norm(gjet, lebesgue, {2.0, alpha, lambda}).total);
  }
  const double rel = std::abs(norms[1] - norms[0]) / norms[0];
  return {std::isfinite(norms[0]) && std::isfinite(norms[1]) && rel < 0.10,
          "norm " + fmt(norms[0]) + " (depth 10) vs " + fmt(norms[1]) + " (depth 12), relative change " + fmt(rel) +
              ", lambda " + fmt(lambda)};
}

Outcome disk_variant() {
  const double pi = std::numbers::pi;
  const auto circle = arc_length_measure(generate_set(SetKind::circle_arc, 8, {0.0, 2 * pi, {}}));
  const DiskKernelParams params{0.5, 1.25};
  const DiskExtension id(induce_complex_jet(holo_polynomial({0.0, 1.0}), circle.atoms(), 1.25), circle, params);
  const DiskExtension prof(induce_complex_jet(power_profile(1.25), circle.atoms(), 1.25), circle, params);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double repro = 0.0, cr = 0.0, dev = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Complex z = std::polar(0.999 * std::sqrt(u(rng)), 2 * pi * u(rng));
    repro = std::max(repro, std::abs(id.value(z) - z));
    const Complex w = std::polar(0.9 * std::sqrt(u(rng)), 2 * pi * u(rng));
    const double r1 = prof.cauchy_riemann_residual(w, 1e-3);
    const double r2 = prof.cauchy_riemann_residual(w, 5e-4);
    cr = std::max(cr, r1);
    if (r1 > 1e-11) dev = std::max(dev, std::abs(r1 / r2 - 4.0));
  }
  const auto a6 = check_assumption6(circle, 0.5);
  const bool ok = repro <= 1e-10 && cr <= 1e-6 && dev <= 0.1 && a6.pass && a6.sup_ratio > 0.0;
  return {ok, "reproduce z " + fmt(repro) + ", CR residual " + fmt(cr) + " (halving ratio within " + fmt(dev) +
                  " of 4), kernel-mass lower bound inf " + fmt(a6.sup_ratio) + (a6.pass ? " stable" : " unstable")};
}

Outcome numerical_lemmas() {
  std::vector<Complex> zs;
  for (int k = 1; k <= 6; ++k) zs.emplace_back(1.0 - std::pow(10.0, -k), 0.0);
  const auto lem = check_lemashiti(2.0, 1.0, zs);
  std::vector<double> deltas;
  for (int j = 1; j <= 8; ++j) deltas.push_back(std::ldexp(1.0, -j));
  const auto con = check_conya(1.0, 1.0, 0.5, 1.0, deltas);
  double lmin = 1e300, cmin = 1e300;
  for (double v : lem.series) lmin = std::min(lmin, v);
  for (double v : con.series) cmin = std::min(cmin, v);
  return {lem.pass && con.pass, "lemashiti ratio range " + fmt(lmin) + ".." + fmt(lem.sup_ratio) + ", conya ratio range " +
                                    fmt(cmin) + ".." + fmt(con.sup_ratio)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no wext executable given"};
  const auto dir = std::filesystem::temp_directory_path() / "wext_acceptance";
  std::filesystem::create_directories(dir);
  auto run = [&](int threads, const std::string& name) {
    const auto out = (dir / name).string();
    const std::string cmd = "\"" + cli + "\" --threads " + std::to_string(threads) +
                            " verify --suite core --seed 7 -o \"" + out + "\" > /dev/null";
    const int status = std::system(cmd.c_str());
    return std::pair{status, slurp(out)};
  };
  const auto [s1, a] = run(1, "core1.txt");
  const auto [s2, b] = run(1, "core2.txt");
  const auto [s3, c] = run(8, "core8.txt");
  std::filesystem::remove_all(dir);
  const bool all_pass = a.find("pass=false") == std::string::npos && s1 == 0;
  const bool ok = !a.empty() && a == b && a == c && all_pass && s2 == 0 && s3 == 0;
  return {ok, std::string("two runs ") + (a == b ? "identical" : "differ") + ", threads 1 vs 8 " +
                  (a == c ? "identical" : "differ") + ", " + std::to_string(a.size()) + " bytes, all checks " +
                  (all_pass ? "pass" : "do not pass")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 normalization", normalization},
      {"2 polynomial reproduction", polynomial_reproduction},
      {"3 re-expansion identity", reexpansion_identity},
      {"4 dimension recovery", dimension_recovery},
      {"5 measure certification", measure_certification},
      {"6 remainder bounds", remainder_bounds},
      {"7 restriction", restriction},
      {"8 Besov stability", besov_stability},
      {"9 disk variant", disk_variant},
      {"10 numerical lemmas", numerical_lemmas},
      {"11 determinism", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.summary << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
