#include "wext/report.hpp"

#include <cmath>

#include "wext/text_io.hpp"

namespace wext {

void VerificationReport::param(const std::string& key, double value) { param(key, io::format_real(value)); }

void VerificationReport::detail(const std::string& key, double value) { detail(key, io::format_real(value)); }

bool refinement_stable(const std::vector<double>& series, double max_growth, double zero_floor) {
  if (series.size() < 2) return false;
  for (double v : series)
    if (!std::isfinite(v)) return false;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double prev = series[i - 1], cur = series[i];
    if (cur <= zero_floor) continue;
    if (prev <= zero_floor) return false;
    if (cur > prev * (1.0 + max_growth)) return false;
  }
  return true;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + io::format_real(v[i]);
  return out;
}

}  // namespace

std::string format_reports(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const auto& rep = reports[r];
    if (r) out += '\n';
    out += "name=" + rep.name + '\n';
    for (const auto& [k, v] : rep.params) out += "param." + k + '=' + v + '\n';
    out += "samples=" + std::to_string(rep.samples) + '\n';
    out += "C=" + io::format_real(rep.sup_ratio) + '\n';
    out += "witness=" + join(rep.witness) + '\n';
    out += "series=" + join(rep.series) + '\n';
    for (const auto& [k, v] : rep.details) out += "detail." + k + '=' + v + '\n';
    out += std::string("pass=") + (rep.pass ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace wext
