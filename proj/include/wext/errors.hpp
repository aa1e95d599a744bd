#pragma once

#include <stdexcept>
#include <string>

namespace wext {

/// Raised when the kernel is evaluated at a point of the set itself.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a measure is requested at a finer scale than the atom cloud resolves.
class ResolutionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wext
