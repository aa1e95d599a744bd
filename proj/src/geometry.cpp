#include "wext/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wext/errors.hpp"
#include "wext/kdtree.hpp"
#include "wext/text_io.hpp"

namespace wext {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("Point: dimension must be >= 1");
  for (double c : coords_)
    if (!std::isfinite(c)) throw std::invalid_argument("Point: non-finite coordinate");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

double euclidean(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double distance(const Point& x, const Point& y, Metric m) {
  if (x.dim() != y.dim()) throw std::invalid_argument("distance: dimension mismatch");
  if (m.kind == MetricKind::isotropic) return euclidean(x.coords(), y.coords());
  if (x.dim() != 2) throw std::invalid_argument("distance: disk metric needs points of R^2");
  const std::complex<double> z(x[0], x[1]), w(y[0], y[1]);
  return std::abs(1.0 - z * std::conj(w));
}

Point SimilarityMap::apply(const Point& x) const {
  std::vector<double> c(x.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ratio * x[i] + offset[i];
  return Point(std::move(c));
}

std::optional<double> SelfSimilarGenerator::uniform_ratio() const {
  if (maps.empty()) return std::nullopt;
  for (const auto& m : maps)
    if (m.ratio != maps.front().ratio) return std::nullopt;
  return maps.front().ratio;
}

double diameter_of(std::span<const Point> pts) {
  if (pts.empty()) return 0.0;
  if (pts.front().dim() == 1) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                        [](const Point& a, const Point& b) { return a[0] < b[0]; });
    return (*hi)[0] - (*lo)[0];
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, euclidean(pts[i].coords(), pts[j].coords()));
  return best;
}

CompactSetSample::CompactSetSample(std::vector<Point> atoms, double resolution,
                                   std::optional<SelfSimilarGenerator> generator)
    : atoms_(std::move(atoms)), resolution_(resolution), generator_(std::move(generator)) {
  if (atoms_.empty()) throw std::invalid_argument("CompactSetSample: no atoms");
  const std::size_t n = atoms_.front().dim();
  for (const auto& a : atoms_)
    if (a.dim() != n) throw std::invalid_argument("CompactSetSample: mixed dimensions");
  {
    std::vector<Point> sorted = atoms_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("CompactSetSample: duplicate atoms");
  }
  index_ = std::make_shared<const KdTree>(atoms_);
  diameter_ = diameter_of(atoms_);
  if (!(resolution_ > 0.0)) {
    // Half the largest nearest-neighbour gap: the scale below which the cloud has no structure.
    double gap = 0.0;
    if (atoms_.size() > 1) {
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        gap = std::max(gap, index_->nearest(atoms_[i].coords(), i).dist);
    }
    resolution_ = gap / 2.0;
  }
}

Point CompactSetSample::bbox_lo() const {
  std::vector<double> lo(atoms_.front().coords().begin(), atoms_.front().coords().end());
  for (const auto& a : atoms_)
    for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], a[i]);
  return Point(std::move(lo));
}

Point CompactSetSample::bbox_hi() const {
  std::vector<double> hi(atoms_.front().coords().begin(), atoms_.front().coords().end());
  for (const auto& a : atoms_)
    for (std::size_t i = 0; i < hi.size(); ++i) hi[i] = std::max(hi[i], a[i]);
  return Point(std::move(hi));
}

NearestAtom nearest_point(const Point& x, const CompactSetSample& set) {
  if (x.dim() != set.dim()) throw std::invalid_argument("nearest_point: dimension mismatch");
  const auto hit = set.index().nearest(x.coords());
  return {hit.index, set.atom(hit.index), hit.dist};
}

NearestAtom nearest_point_brute(const Point& x, const CompactSetSample& set) {
  if (x.dim() != set.dim()) throw std::invalid_argument("nearest_point: dimension mismatch");
  std::size_t best = 0;
  double best_d = euclidean(x.coords(), set.atom(0).coords());
  for (std::size_t i = 1; i < set.size(); ++i) {
    const double d = euclidean(x.coords(), set.atom(i).coords());
    if (d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return {best, set.atom(best), best_d};
}

SetKind parse_set_kind(const std::string& name) {
  if (name == "interval") return SetKind::interval;
  if (name == "cantor") return SetKind::cantor;
  if (name == "sierpinski") return SetKind::sierpinski;
  if (name == "circle-arc" || name == "circle_arc" || name == "arc") return SetKind::circle_arc;
  if (name == "file") return SetKind::file;
  throw std::invalid_argument("unknown set kind '" + name + "'");
}

std::string to_string(SetKind kind) {
  switch (kind) {
    case SetKind::interval: return "interval";
    case SetKind::cantor: return "cantor";
    case SetKind::sierpinski: return "sierpinski";
    case SetKind::circle_arc: return "circle-arc";
    case SetKind::file: return "file";
  }
  return "?";
}

namespace {

std::vector<Point> iterate_maps(const SelfSimilarGenerator& gen) {
  std::vector<Point> level = gen.base;
  for (int d = 0; d < gen.depth; ++d) {
    std::vector<Point> next;
    next.reserve(level.size() * gen.maps.size());
    for (const auto& m : gen.maps)
      for (const auto& p : level) next.push_back(m.apply(p));
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());
  return level;
}

}  // namespace

CompactSetSample generate_set(SetKind kind, int depth, const SetParams& params) {
  if (depth < 0) throw std::invalid_argument("generate_set: depth must be >= 0");
  if (depth > 30) throw std::invalid_argument("generate_set: depth too large");
  switch (kind) {
    case SetKind::interval: {
      const std::size_t cells = std::size_t{1} << depth;
      std::vector<Point> atoms;
      atoms.reserve(cells + 1);
      for (std::size_t i = 0; i <= cells; ++i) atoms.push_back(Point{static_cast<double>(i) / cells});
      SelfSimilarGenerator gen{{{0.5, {0.0}}, {0.5, {0.5}}}, {Point{0.0}, Point{1.0}}, depth, Point{0.0},
                               Point{1.0}};
      return CompactSetSample(std::move(atoms), 0.5 / static_cast<double>(cells), std::move(gen));
    }
    case SetKind::cantor: {
      SelfSimilarGenerator gen{{{1.0 / 3.0, {0.0}}, {1.0 / 3.0, {2.0 / 3.0}}}, {Point{0.0}}, depth, Point{0.0},
                               Point{1.0}};
      auto atoms = iterate_maps(gen);
      return CompactSetSample(std::move(atoms), std::pow(3.0, -depth), std::move(gen));
    }
    case SetKind::sierpinski: {
      const double h = std::sqrt(3.0) / 2.0;
      SelfSimilarGenerator gen{{{0.5, {0.0, 0.0}}, {0.5, {0.5, 0.0}}, {0.5, {0.25, h / 2.0}}},
                               {Point{0.0, 0.0}},
                               depth,
                               Point{0.0, 0.0},
                               Point{1.0, h}};
      auto atoms = iterate_maps(gen);
      return CompactSetSample(std::move(atoms), std::ldexp(1.0, -depth), std::move(gen));
    }
    case SetKind::circle_arc: {
      const double span = params.arc_end - params.arc_begin;
      if (!(span > 0.0)) throw std::invalid_argument("generate_set: empty arc");
      const bool full = span >= 2.0 * std::numbers::pi;
      const std::size_t cells = std::size_t{1} << depth;
      const std::size_t count = full ? cells : cells + 1;
      const double step = (full ? 2.0 * std::numbers::pi : span) / static_cast<double>(cells);
      std::vector<Point> atoms;
      atoms.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double th = params.arc_begin + step * static_cast<double>(i);
        atoms.push_back(Point{std::cos(th), std::sin(th)});
      }
      return CompactSetSample(std::move(atoms), std::sin(step / 2.0));
    }
    case SetKind::file:
      return read_point_cloud(params.path);
  }
  throw std::invalid_argument("generate_set: unknown kind");
}

CompactSetSample read_point_cloud(const std::string& path) {
  const auto lines = io::read_lines(path);
  if (lines.empty()) throw FormatError(path, 0, "no points");
  const std::size_t n = lines.front().fields.size();
  std::vector<Point> atoms;
  atoms.reserve(lines.size());
  for (const auto& line : lines) {
    if (line.fields.size() != n)
      throw FormatError(path, line.number,
                        "expected " + std::to_string(n) + " coordinates, got " + std::to_string(line.fields.size()));
    std::vector<double> c;
    c.reserve(n);
    for (const auto& f : line.fields) c.push_back(io::parse_real(f, path, line.number));
    atoms.emplace_back(std::move(c));
  }
  try {
    return CompactSetSample(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string format_point_cloud(std::span<const Point> pts) {
  std::string out;
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i) out += ' ';
      out += io::format_real(p[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace wext
