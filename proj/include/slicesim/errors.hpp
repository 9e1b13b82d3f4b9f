#ifndef SLICESIM_ERRORS_HPP
#define SLICESIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slicesim {

/// Malformed scenario text (syntax level).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input that violates a domain invariant.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// File-system failures.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite intermediate values, divergent solver configurations.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slicesim

#endif
