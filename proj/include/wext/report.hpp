#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wext {

/// Outcome of one sampled sup-ratio check.
struct VerificationReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // in insertion order
  std::size_t samples = 0;
  double sup_ratio = 0.0;                                    // the empirical constant C
  std::vector<double> witness;                               // where sup_ratio was attained
  std::vector<double> series;                                // C at successive refinements
  std::vector<std::pair<std::string, std::string>> details;  // check-specific extras
  bool pass = false;

  void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
  void param(const std::string& key, double value);
  void detail(const std::string& key, const std::string& value) { details.emplace_back(key, value); }
  void detail(const std::string& key, double value);
};

/// True when no step of the series grows by `max_growth` or more (relative),
/// with values below `zero_floor` treated as exact zeros.
bool refinement_stable(const std::vector<double>& series, double max_growth, double zero_floor = 1e-9);

/// One key=value line per field, fields in a fixed order, records separated by blank lines.
std::string format_reports(const std::vector<VerificationReport>& reports);

}  // namespace wext
