#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wext::io {

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_real(double v);

/// Writes `contents` to `path` through a sibling temporary file and a rename.
void write_atomic(const std::string& path, const std::string& contents);

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

/// Reads a text file, dropping `#` comments and blank lines.
std::vector<Line> read_lines(const std::string& path);

double parse_real(const std::string& field, const std::string& path, std::size_t line);
long parse_integer(const std::string& field, const std::string& path, std::size_t line);

std::vector<std::string> split(std::string_view s, char sep);

}  // namespace wext::io
