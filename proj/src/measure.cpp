#include "wext/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "wext/errors.hpp"
#include "wext/kdtree.hpp"
#include "wext/text_io.hpp"

namespace wext {

DyadicTree::DyadicTree(Point root_center, double root_half_width, int branching, int depth)
    : center_(std::move(root_center)), half_width_(root_half_width), branching_(branching), depth_(depth) {}

double DyadicTree::side_at(int level) const { return 2.0 * half_width_ / std::pow(branching_, level); }

Point DyadicTree::cell_center(const Node& node) const {
  const double side = side_at(node.level);
  std::vector<double> c(center_.dim());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = center_[i] - half_width_ + (static_cast<double>(node.cell[i]) + 0.5) * side;
  return Point(std::move(c));
}

double DyadicTree::conservation_defect() const {
  double worst = 0.0;
  for (const auto& node : nodes_) {
    if (node.children.empty()) continue;
    double sum = 0.0;
    for (int c : node.children) sum += nodes_[c].mass;
    worst = std::max(worst, std::abs(sum - node.mass));
  }
  return worst;
}

class MeasureBuilder {
 public:
  MeasureBuilder(const CompactSetSample& set, DyadicTree& tree) : set_(set), tree_(tree) {}

  void run() {
    const std::size_t n = set_.dim();
    const auto& t = tree_;
    const std::int64_t cells = ipow(t.branching_, t.depth_);
    const double leaf = t.side_at(t.depth_);
    leaf_cell_.resize(set_.size() * n);
    for (std::size_t a = 0; a < set_.size(); ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        const double rel = (set_.atom(a)[i] - (t.center_[i] - t.half_width_)) / leaf;
        // Atoms sitting on a cell boundary belong to the upper cell even when
        // the division rounds just below the integer.
        auto c = static_cast<std::int64_t>(std::floor(rel + 1e-9));
        leaf_cell_[a * n + i] = std::clamp<std::int64_t>(c, 0, cells - 1);
      }
    }
    std::vector<std::size_t> all(set_.size());
    std::iota(all.begin(), all.end(), 0);
    tree_.nodes_.clear();
    tree_.nodes_.push_back({0, std::vector<std::int64_t>(n, 0), 1.0, {}, {}});
    expand(0, all);
  }

 private:
  static std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  void expand(int id, const std::vector<std::size_t>& atoms) {
    const int level = tree_.nodes_[id].level;
    const std::size_t n = set_.dim();
    if (level == tree_.depth_) {
      tree_.nodes_[id].atoms = atoms;
      return;
    }
    const std::int64_t scale = ipow(tree_.branching_, tree_.depth_ - level - 1);
    std::map<std::int64_t, std::vector<std::size_t>> groups;
    for (std::size_t a : atoms) {
      std::int64_t child = 0;
      for (std::size_t i = n; i-- > 0;) child = child * tree_.branching_ + (leaf_cell_[a * n + i] / scale) % tree_.branching_;
      groups[child].push_back(a);
    }
    const double share = tree_.nodes_[id].mass / static_cast<double>(groups.size());
    for (auto& [child, members] : groups) {
      std::vector<std::int64_t> cell(n);
      for (std::size_t i = 0; i < n; ++i) cell[i] = leaf_cell_[members.front() * n + i] / scale;
      const int cid = static_cast<int>(tree_.nodes_.size());
      tree_.nodes_.push_back({level + 1, std::move(cell), share, {}, {}});
      tree_.nodes_[id].children.push_back(cid);
      expand(cid, members);
    }
  }

  const CompactSetSample& set_;
  DyadicTree& tree_;
  std::vector<std::int64_t> leaf_cell_;
};

DoublingMeasure::DoublingMeasure(std::vector<Point> atoms, std::vector<double> weights, int depth,
                                 double resolution, std::optional<DyadicTree> tree,
                                 std::vector<std::size_t> source)
    : atoms_(std::move(atoms)),
      weights_(std::move(weights)),
      depth_(depth),
      resolution_(resolution),
      tree_(std::move(tree)),
      source_(std::move(source)) {
  if (atoms_.empty()) throw std::invalid_argument("DoublingMeasure: no atoms");
  if (atoms_.size() != weights_.size()) throw std::invalid_argument("DoublingMeasure: weight count mismatch");
  long double total = 0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("DoublingMeasure: weights must be positive");
    total += w;
  }
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-12)
    throw std::invalid_argument("DoublingMeasure: weights do not sum to 1");
  if (source_.empty()) {
    source_.resize(atoms_.size());
    std::iota(source_.begin(), source_.end(), 0);
  }
  support_ = std::make_shared<const CompactSetSample>(atoms_, resolution_ > 0.0 ? resolution_ : 0.0);
  if (!(resolution_ > 0.0)) resolution_ = support_->resolution();
  diameter_ = support_->diameter();
  index_ = std::make_shared<const KdTree>(atoms_, weights_);
}

double DoublingMeasure::ball_mass(std::span<const double> x, double r) const {
  if (r < 0.0) throw std::invalid_argument("ball_mass: negative radius");
  return index_->mass_within(x, r);
}

double DoublingMeasure::mu_pair(std::size_t t, std::size_t s) const {
  return ball_mass(atoms_[t].coords(), euclidean(atoms_[t].coords(), atoms_[s].coords()));
}

std::vector<double> DoublingMeasure::mu_pairs_from(std::size_t t) const {
  const std::size_t n = atoms_.size();
  std::vector<double> dist(n);
  for (std::size_t s = 0; s < n; ++s) dist[s] = euclidean(atoms_[t].coords(), atoms_[s].coords());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  });
  std::vector<double> out(n);
  long double acc = 0;
  for (std::size_t k = 0; k < n;) {
    std::size_t end = k;
    while (end < n && dist[order[end]] == dist[order[k]]) acc += weights_[order[end++]];
    for (std::size_t m = k; m < end; ++m) out[order[m]] = static_cast<double>(acc);
    k = end;
  }
  return out;
}

DoublingMeasure build_measure(const CompactSetSample& set, const MeasureOptions& options) {
  if (options.depth < 1) throw std::invalid_argument("build_measure: depth must be >= 1");
  const std::size_t n = set.dim();

  int branching = options.branching;
  if (branching == 0) {
    branching = 2;
    if (set.generator()) {
      if (auto r = set.generator()->uniform_ratio()) {
        const double inv = 1.0 / *r;
        if (std::abs(inv - std::round(inv)) < 1e-12 && std::round(inv) >= 2) branching = static_cast<int>(std::round(inv));
      }
    }
  }
  if (branching < 2) throw std::invalid_argument("build_measure: branching must be >= 2");
  if (options.depth * std::log2(static_cast<double>(branching)) > 60)
    throw std::invalid_argument("build_measure: depth too large for integer cell coordinates");

  Point lo = set.generator() ? set.generator()->hull_lo : set.bbox_lo();
  Point hi = set.generator() ? set.generator()->hull_hi : set.bbox_hi();
  double half = 0.0;
  std::vector<double> center(n);
  for (std::size_t i = 0; i < n; ++i) {
    center[i] = 0.5 * (lo[i] + hi[i]);
    half = std::max(half, 0.5 * (hi[i] - lo[i]));
  }
  if (!(half > 0.0)) half = 0.5;

  DyadicTree tree(Point(center), half, branching, options.depth);
  const double leaf = tree.side_at(options.depth);
  if (set.size() > 1 && leaf < set.resolution() * (1.0 - 1e-12))
    throw ResolutionMismatch("build_measure: leaf side " + io::format_real(leaf) + " is below the set resolution " +
                             io::format_real(set.resolution()) + "; occupied leaves would miss parts of the set");

  MeasureBuilder(set, tree).run();

  std::vector<double> weight(set.size(), 0.0);
  for (const auto& node : tree.nodes()) {
    if (node.level != options.depth) continue;
    const Point c = tree.cell_center(node);
    std::size_t best = node.atoms.front();
    double best_d = euclidean(c.coords(), set.atom(best).coords());
    for (std::size_t a : node.atoms) {
      const double d = euclidean(c.coords(), set.atom(a).coords());
      if (d < best_d || (d == best_d && a < best)) {
        best = a;
        best_d = d;
      }
    }
    weight[best] += node.mass;
  }

  std::vector<Point> atoms;
  std::vector<double> weights;
  std::vector<std::size_t> source;
  for (std::size_t a = 0; a < set.size(); ++a) {
    if (weight[a] > 0.0) {
      atoms.push_back(set.atom(a));
      weights.push_back(weight[a]);
      source.push_back(a);
    }
  }
  return DoublingMeasure(std::move(atoms), std::move(weights), options.depth, set.resolution(), std::move(tree),
                         std::move(source));
}

MeasureCertificate certify(const DoublingMeasure& mu, double gamma, double lambda, const CertifyOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("certify: trials must be >= 1");
  if (gamma < lambda) throw std::invalid_argument("certify: gamma must be >= lambda");
  MeasureCertificate cert;
  cert.gamma_up = gamma;
  cert.lambda_low = lambda;
  const double diam = mu.diameter();
  if (mu.size() == 1 || !(diam > 0.0)) {
    // A point mass: every ball around the atom has mass 1.
    cert.c_up = cert.c_low = 1.0;
    cert.samples = options.trials;
    cert.pass = true;
    return cert;
  }
  const double r_min = options.min_radius.value_or(mu.resolution());
  if (!(r_min > 0.0) || !(r_min < diam)) throw std::invalid_argument("certify: minimum radius outside (0, diam)");

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, mu.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  cert.c_up = 0.0;
  cert.c_low = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const std::size_t x = pick(rng);
    double R, k;
    if (options.fixed_k) {
      k = *options.fixed_k;
      const double r_max = diam / k;
      R = r_min < r_max ? r_min * std::exp(unit(rng) * std::log(r_max / r_min)) : r_max;
    } else {
      R = r_min * std::exp(unit(rng) * std::log(diam / r_min));
      k = std::exp(unit(rng) * std::log(diam / R));
    }
    const double inner = mu.ball_mass(mu.atom(x), R);
    const double outer = mu.ball_mass(mu.atom(x), k * R);
    if (!(inner > 0.0)) throw std::logic_error("certify: empty ball around an atom of the support");
    cert.c_up = std::max(cert.c_up, outer / (std::pow(k, gamma) * inner));
    cert.c_low = std::min(cert.c_low, outer / (std::pow(k, lambda) * inner));
  }
  cert.samples = options.trials;
  cert.pass = cert.c_up <= options.threshold && cert.c_low >= 1.0 / options.threshold;
  return cert;
}

std::string format_measure(const DoublingMeasure& mu) {
  std::string out = "# wext measure\n";
  out += "dimension " + std::to_string(mu.dim()) + "\n";
  out += "depth " + std::to_string(mu.depth()) + "\n";
  out += "atoms " + std::to_string(mu.size()) + "\n";
  for (std::size_t a = 0; a < mu.size(); ++a) {
    for (std::size_t i = 0; i < mu.dim(); ++i) out += io::format_real(mu.atom(a)[i]) + ' ';
    out += io::format_real(mu.weight(a)) + '\n';
  }
  return out;
}

DoublingMeasure read_measure(const std::string& path) {
  const auto lines = io::read_lines(path);
  auto header = [&](std::size_t k, const char* key) -> long {
    if (lines.size() <= k || lines[k].fields.size() != 2 || lines[k].fields[0] != key)
      throw FormatError(path, k < lines.size() ? lines[k].number : 0, std::string("expected '") + key + " <n>'");
    return io::parse_integer(lines[k].fields[1], path, lines[k].number);
  };
  const long dim = header(0, "dimension");
  const long depth = header(1, "depth");
  const long count = header(2, "atoms");
  if (dim < 1 || count < 1) throw FormatError(path, lines[0].number, "dimension and atom count must be positive");
  if (static_cast<long>(lines.size()) - 3 != count)
    throw FormatError(path, lines.back().number,
                      "header declares " + std::to_string(count) + " atoms, found " + std::to_string(lines.size() - 3));
  std::vector<Point> atoms;
  std::vector<double> weights;
  for (std::size_t k = 3; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (static_cast<long>(line.fields.size()) != dim + 1)
      throw FormatError(path, line.number, "expected " + std::to_string(dim + 1) + " fields");
    std::vector<double> c;
    for (long i = 0; i < dim; ++i) c.push_back(io::parse_real(line.fields[i], path, line.number));
    atoms.emplace_back(std::move(c));
    weights.push_back(io::parse_real(line.fields[dim], path, line.number));
  }
  try {
    return DoublingMeasure(std::move(atoms), std::move(weights), static_cast<int>(depth), 0.0);
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace wext
