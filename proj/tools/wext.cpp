// Command-line front end: set generation, measures, dimensions, extension grids,
// the disk variant and verification suites.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wext/dimensions.hpp"
#include "wext/errors.hpp"
#include "wext/extension.hpp"
#include "wext/holo.hpp"
#include "wext/measure.hpp"
#include "wext/parallel.hpp"
#include "wext/text_io.hpp"
#include "wext/verify.hpp"

namespace fs = std::filesystem;
using namespace wext;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

class MissingFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Effective configuration, printed as the header of every command's report.
class Config {
 public:
  void set(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
  void set(const std::string& key, double value) { set(key, io::format_real(value)); }
  std::string header(const std::string& command) const {
    std::string out = "# wext " + command + "\n";
    for (const auto& [k, v] : entries_) out += "# " + k + "=" + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string require_file(const std::string& path) {
  if (!fs::exists(path)) throw MissingFile("missing file: " + path);
  return path;
}

// Output path: explicit -o wins; otherwise the default name inside $WEXT_OUT_DIR (or the cwd).
std::string output_path(const std::string& explicit_path, const std::string& default_name) {
  if (!explicit_path.empty()) return explicit_path;
  const char* dir = std::getenv("WEXT_OUT_DIR");
  return (fs::path(dir && *dir ? dir : ".") / default_name).string();
}

void write_output(const std::string& path, const std::string& contents) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  io::write_atomic(path, contents);
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : io::split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("invalid " + what + ": '" + text + "'");
    }
  }
  return out;
}

// "x0:x1:n" per axis, axes separated by commas.
GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  for (const auto& axis : io::split(text, ',')) {
    const auto parts = io::split(axis, ':');
    if (parts.size() != 3) throw UsageError("invalid --grid axis '" + axis + "' (expected lo:hi:count)");
    const auto ends = parse_reals(parts[0] + "," + parts[1], "--grid");
    long n = 0;
    try {
      n = std::stol(parts[2]);
    } catch (const std::exception&) {
      throw UsageError("invalid --grid count '" + parts[2] + "'");
    }
    if (n < 1) throw UsageError("--grid counts must be positive");
    g.origin.push_back(ends[0]);
    g.spacing.push_back(n > 1 ? (ends[1] - ends[0]) / static_cast<double>(n - 1) : 0.0);
    g.counts.push_back(static_cast<std::size_t>(n));
  }
  return g;
}

// One-dimensional: "1,2" are orders. Otherwise indices separated by ';', entries by ','.
std::vector<MultiIndex> parse_derivs(const std::string& text, std::size_t n) {
  std::vector<MultiIndex> out;
  if (text.empty()) return out;
  std::vector<std::string> parts;
  if (text.find(';') != std::string::npos) parts = io::split(text, ';');
  else if (n == 1) parts = io::split(text, ',');
  else parts = {text};
  for (const auto& p : parts) {
    auto a = MultiIndex::parse(p);
    if (a.dim() != n) throw UsageError("--derivs index '" + p + "' does not match dimension " + std::to_string(n));
    out.push_back(a);
  }
  return out;
}

// Named closed-form functions: const<c>, sin, poly:c0,c1,...
SmoothFunction named_function(const std::string& name, std::size_t n) {
  if (name.rfind("const", 0) == 0) {
    const std::string rest = name.substr(5);
    return constant_function(n, rest.empty() ? 1.0 : parse_reals(rest, "constant")[0]);
  }
  if (name == "sin") return sine_function(n);
  if (name.rfind("poly:", 0) == 0) {
    if (n != 1) throw UsageError("poly: jets are one-dimensional");
    return Polynomial::univariate(parse_reals(name.substr(5), "polynomial coefficients")).as_function();
  }
  throw UsageError("unknown jet '" + name + "' (use a jet file, const<c>, sin or poly:c0,c1,...)");
}

HoloFunction named_holo(const std::string& name) {
  if (name.rfind("poly:", 0) == 0) {
    std::vector<Complex> c;
    for (double v : parse_reals(name.substr(5), "polynomial coefficients")) c.emplace_back(v, 0.0);
    return holo_polynomial(c);
  }
  if (name.rfind("power:", 0) == 0) return power_profile(parse_reals(name.substr(6), "power")[0]);
  throw UsageError("unknown holomorphic function '" + name + "' (use poly:c0,c1,... or power:a)");
}

int report_exit(bool pass) { return pass ? kOk : kCheckFailed; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wext: kernel extension of jets from sets carrying doubling measures"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = all cores); results do not depend on it");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a test set as a point file");
  std::string gen_kind = "cantor", gen_out;
  int gen_depth = 8;
  double arc_begin = 0.0, arc_end = 2 * std::numbers::pi;
  gen->add_option("--kind", gen_kind, "interval | cantor | sierpinski | circle_arc")->capture_default_str();
  gen->add_option("--depth", gen_depth, "Construction depth")->capture_default_str();
  gen->add_option("--arc-begin", arc_begin, "circle_arc: first angle (radians)")->capture_default_str();
  gen->add_option("--arc-end", arc_end, "circle_arc: last angle (radians)")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Point file (default $WEXT_OUT_DIR/set.pts)");

  // measure
  auto* meas = app.add_subcommand("measure", "Build the equal-split measure of a point file");
  std::string meas_in, meas_out;
  int meas_depth = 8, meas_branching = 0;
  double cert_gamma = -1.0, cert_lambda = -1.0, cert_threshold = 16.0;
  std::size_t cert_trials = 10000;
  std::uint64_t meas_seed = 1;
  meas->add_option("points", meas_in, "Point file")->required();
  meas->add_option("--depth", meas_depth, "Subdivision depth")->capture_default_str();
  meas->add_option("--branching", meas_branching, "Children per axis (0 = automatic)")->capture_default_str();
  meas->add_option("--certify-gamma", cert_gamma, "Certify U_gamma with this gamma (needs --certify-lambda)");
  meas->add_option("--certify-lambda", cert_lambda, "Certify L_lambda with this lambda");
  meas->add_option("--trials", cert_trials, "Certification samples")->capture_default_str();
  meas->add_option("--threshold", cert_threshold, "Certification constant bound")->capture_default_str();
  meas->add_option("--seed", meas_seed, "Certification seed")->capture_default_str();
  meas->add_option("-o,--output", meas_out, "Measure file (default $WEXT_OUT_DIR/measure.msr)");

  // dims
  auto* dims = app.add_subcommand("dims", "Estimate upper and lower dimensions of a point file");
  std::string dims_in, dims_out;
  std::size_t dims_trials = 64;
  std::uint64_t dims_seed = 1;
  dims->add_option("points", dims_in, "Point file")->required();
  dims->add_option("--trials", dims_trials, "Centres sampled")->capture_default_str();
  dims->add_option("--seed", dims_seed, "Seed")->capture_default_str();
  dims->add_option("-o,--output", dims_out, "log k / log N table (default $WEXT_OUT_DIR/dims.tbl)");

  // extend
  auto* ext = app.add_subcommand("extend", "Evaluate the extension (and derivatives) on a grid");
  std::string ext_measure, ext_jet = "const1", ext_grid, ext_derivs, ext_out;
  double ext_q = 0.0, ext_alpha = 1.0, ext_window = 0.0;
  ext->add_option("--measure", ext_measure, "Measure file")->required();
  ext->add_option("--jet", ext_jet, "Jet file, or const<c> | sin | poly:c0,c1,...")->capture_default_str();
  ext->add_option("--q", ext_q, "Kernel exponent (default dimension + alpha + 1)");
  ext->add_option("--alpha", ext_alpha, "Jet order for named jets")->capture_default_str();
  ext->add_option("--grid", ext_grid, "lo:hi:count per axis, comma separated")->required();
  ext->add_option("--derivs", ext_derivs, "Derivative multi-indices (1-D: orders 1,2; n-D: 1,0;0,1)");
  ext->add_option("--window", ext_window, "Window radius R (phi = 1 on B(0,R), 0 off B(0,2R))");
  ext->add_option("-o,--output", ext_out, "Field file (default $WEXT_OUT_DIR/field.grd)");

  // holo
  auto* holo = app.add_subcommand("holo", "Disk variant: evaluate the holomorphic extension or scan the kernel-mass lower bound");
  std::string holo_set, holo_fn = "poly:0,1", holo_check, holo_out;
  int holo_depth = 8, holo_radii = 8, holo_angles = 16;
  double holo_q = 0.5, holo_alpha = 1.0, holo_begin = 0.0, holo_end = 2 * std::numbers::pi;
  holo->add_option("--set", holo_set, "Angle file (one angle per line); default an arc from --arc-begin/--arc-end");
  holo->add_option("--depth", holo_depth, "Arc depth when no --set is given")->capture_default_str();
  holo->add_option("--arc-begin", holo_begin, "Arc start angle")->capture_default_str();
  holo->add_option("--arc-end", holo_end, "Arc end angle")->capture_default_str();
  holo->add_option("--q", holo_q, "Kernel exponent")->capture_default_str();
  holo->add_option("--alpha", holo_alpha, "Jet order")->capture_default_str();
  holo->add_option("--function", holo_fn, "poly:c0,c1,... | power:a")->capture_default_str();
  holo->add_option("--radii", holo_radii, "Radial levels r = 1 - 2^-j")->capture_default_str();
  holo->add_option("--angles", holo_angles, "Angles per radius")->capture_default_str();
  holo->add_option("--check", holo_check, "assumption6: scan the lower bound |h_q| d^q / mu(B) instead");
  holo->add_option("-o,--output", holo_out, "Table or report (default $WEXT_OUT_DIR/holo.tbl)");

  // verify
  auto* ver = app.add_subcommand("verify", "Run verification checks and write a report");
  std::vector<std::string> ver_checks;
  std::string ver_suite, ver_out;
  std::uint64_t ver_seed = 7;
  std::size_t ver_samples = 300;
  ver->add_option("--suite", ver_suite, "core | extension | numerics | holo");
  ver->add_option("--checks", ver_checks, "Individual check names")->delimiter(',');
  ver->add_option("--seed", ver_seed, "Seed shared by all checks")->capture_default_str();
  ver->add_option("--samples", ver_samples, "Sample points per depth")->capture_default_str();
  ver->add_option("-o,--output", ver_out, "Report file (default $WEXT_OUT_DIR/report.txt)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_thread_count(threads);
    Config cfg;
    if (*gen) {
      cfg.set("kind", gen_kind);
      cfg.set("depth", std::to_string(gen_depth));
      SetParams params{arc_begin, arc_end, {}};
      const auto kind = parse_set_kind(gen_kind);
      if (kind == SetKind::circle_arc) {
        cfg.set("arc_begin", arc_begin);
        cfg.set("arc_end", arc_end);
      }
      const auto set = generate_set(kind, gen_depth, params);
      const auto path = output_path(gen_out, "set.pts");
      cfg.set("output", path);
      write_output(path, format_point_cloud(set.atoms()));
      std::cout << cfg.header("gen") << "atoms=" << set.size() << "\n";
      return kOk;
    }
    if (*meas) {
      const auto set = read_point_cloud(require_file(meas_in));
      MeasureOptions opt;
      opt.depth = meas_depth;
      opt.branching = meas_branching;
      const auto mu = build_measure(set, opt);
      const auto path = output_path(meas_out, "measure.msr");
      cfg.set("points", meas_in);
      cfg.set("depth", std::to_string(meas_depth));
      cfg.set("branching", std::to_string(mu.tree() ? mu.tree()->branching() : meas_branching));
      cfg.set("output", path);
      write_output(path, format_measure(mu));
      std::cout << cfg.header("measure") << "atoms=" << mu.size() << "\n";
      if (cert_gamma >= 0.0 || cert_lambda >= 0.0) {
        if (cert_gamma < 0.0 || cert_lambda < 0.0)
          throw UsageError("--certify-gamma and --certify-lambda must be given together");
        CertifyOptions co;
        co.trials = cert_trials;
        co.seed = meas_seed;
        co.threshold = cert_threshold;
        const auto c = certify(mu, cert_gamma, cert_lambda, co);
        std::cout << "# gamma=" << io::format_real(cert_gamma) << "\n# lambda=" << io::format_real(cert_lambda)
                  << "\n# trials=" << cert_trials << "\n# seed=" << meas_seed
                  << "\n# threshold=" << io::format_real(cert_threshold) << "\nc_up=" << io::format_real(c.c_up)
                  << "\nc_low=" << io::format_real(c.c_low) << "\nsamples=" << c.samples
                  << "\npass=" << (c.pass ? "true" : "false") << "\n";
        return report_exit(c.pass);
      }
      return kOk;
    }
    if (*dims) {
      const auto set = read_point_cloud(require_file(dims_in));
      const ScaleRange range;
      const auto est = estimate_dimensions(set, dims_trials, range, dims_seed);
      const auto path = output_path(dims_out, "dims.tbl");
      cfg.set("points", dims_in);
      cfg.set("trials", std::to_string(dims_trials));
      cfg.set("seed", std::to_string(dims_seed));
      cfg.set("k_base", range.k_base);
      cfg.set("resolution_factor", range.resolution_factor);
      cfg.set("output", path);
      write_output(path, cfg.header("dims") + format_dimension_table(est));
      std::cout << cfg.header("dims") << "upper=" << io::format_real(est.upper)
                << "\nlower=" << io::format_real(est.lower) << "\nfit_residual=" << io::format_real(est.fit_residual)
                << "\n";
      return kOk;
    }
    if (*ext) {
      auto mu = read_measure(require_file(ext_measure));
      const std::size_t n = mu.dim();
      std::optional<Jet> jet;
      if (fs::exists(ext_jet)) {
        jet = read_jet(ext_jet);
        ext_alpha = jet->order();
      } else {
        std::vector<Point> base(mu.atoms().begin(), mu.atoms().end());
        jet = induce_jet(named_function(ext_jet, n), base, ext_alpha);
      }
      const double q = ext_q > 0.0 ? ext_q : static_cast<double>(n) + ext_alpha + 1.0;
      const auto grid = parse_grid(ext_grid);
      if (grid.dim() != n) throw UsageError("--grid has " + std::to_string(grid.dim()) + " axes, the measure lives in dimension " + std::to_string(n));
      const auto derivs = parse_derivs(ext_derivs, n);
      std::optional<double> window;
      if (ext_window > 0.0) window = ext_window;
      const Extension op(*jet, std::move(mu), {q, ext_alpha, {}});
      const auto field = assemble_g(op, grid, derivs, window);
      const auto path = output_path(ext_out, "field.grd");
      cfg.set("measure", ext_measure);
      cfg.set("jet", ext_jet);
      cfg.set("q", q);
      cfg.set("alpha", ext_alpha);
      cfg.set("grid", ext_grid);
      cfg.set("derivs", ext_derivs.empty() ? "none" : ext_derivs);
      cfg.set("window", window ? io::format_real(*window) : std::string("none"));
      cfg.set("output", path);
      write_output(path, cfg.header("extend") + format_field(field));
      std::cout << cfg.header("extend") << "nodes=" << field.nodes.size() << "\n";
      return kOk;
    }
    if (*holo) {
      const auto set = holo_set.empty() ? generate_set(SetKind::circle_arc, holo_depth, {holo_begin, holo_end, {}})
                                        : read_circle_set(require_file(holo_set));
      auto mu = arc_length_measure(set);
      cfg.set("set", holo_set.empty() ? "arc" : holo_set);
      if (holo_set.empty()) {
        cfg.set("depth", std::to_string(holo_depth));
        cfg.set("arc_begin", holo_begin);
        cfg.set("arc_end", holo_end);
      }
      cfg.set("q", holo_q);
      const auto path = output_path(holo_out, "holo.tbl");
      if (!holo_check.empty()) {
        if (holo_check != "assumption6") throw UsageError("unknown --check '" + holo_check + "'");
        const auto rep = check_assumption6(mu, holo_q);
        cfg.set("check", holo_check);
        cfg.set("output", path);
        write_output(path, cfg.header("holo") + format_reports({rep}));
        std::cout << cfg.header("holo") << "C=" << io::format_real(rep.sup_ratio)
                  << "\npass=" << (rep.pass ? "true" : "false") << "\n";
        return report_exit(rep.pass);
      }
      std::vector<Point> base(mu.atoms().begin(), mu.atoms().end());
      const DiskExtension op(induce_complex_jet(named_holo(holo_fn), base, holo_alpha), std::move(mu),
                             {holo_q, holo_alpha});
      cfg.set("alpha", holo_alpha);
      cfg.set("function", holo_fn);
      cfg.set("radii", std::to_string(holo_radii));
      cfg.set("angles", std::to_string(holo_angles));
      cfg.set("output", path);
      std::string table = cfg.header("holo") + "# columns: re(z) im(z) re(E) im(E) status\n";
      for (int j = 0; j <= holo_radii; ++j) {
        const double r = j == 0 ? 0.0 : 1.0 - std::ldexp(1.0, -j);
        const int count = j == 0 ? 1 : holo_angles;
        for (int k = 0; k < count; ++k) {
          const Complex z = std::polar(r, 2 * std::numbers::pi * k / holo_angles);
          table += io::format_real(z.real()) + ' ' + io::format_real(z.imag()) + ' ';
          try {
            const Complex v = op.value(z);
            table += io::format_real(v.real()) + ' ' + io::format_real(v.imag()) + " ok\n";
          } catch (const SingularityError&) {
            table += "nan nan uncertified\n";
          }
        }
      }
      write_output(path, table);
      std::cout << cfg.header("holo");
      return kOk;
    }
    if (*ver) {
      SuiteConfig sc;
      if (!ver_suite.empty()) sc.checks.push_back(ver_suite);
      for (const auto& c : ver_checks) sc.checks.push_back(c);
      if (sc.checks.empty()) throw UsageError("verify needs --suite or --checks");
      sc.seed = ver_seed;
      sc.samples = ver_samples;
      const auto reports = run_suite(sc);
      const auto path = output_path(ver_out, "report.txt");
      cfg.set("suite", ver_suite.empty() ? "none" : ver_suite);
      std::string names;
      for (const auto& c : ver_checks) names += (names.empty() ? "" : ",") + c;
      cfg.set("checks", names.empty() ? "none" : names);
      cfg.set("seed", std::to_string(ver_seed));
      cfg.set("samples", std::to_string(ver_samples));
      write_output(path, cfg.header("verify") + "\n" + format_reports(reports));
      bool pass = true;
      std::cout << cfg.header("verify") << "# output=" << path << "\n";
      for (const auto& r : reports) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " C=" << io::format_real(r.sup_ratio) << "\n";
        pass = pass && r.pass;
      }
      return report_exit(pass);
    }
  } catch (const MissingFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const ResolutionMismatch& e) {
    std::cerr << "error: resolution mismatch: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularityError& e) {
    std::cerr << "error: singular evaluation: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid parameter: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
