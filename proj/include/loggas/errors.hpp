#pragma once

#include <stdexcept>
#include <string>

namespace loggas {

// Bad user input: malformed config, inconsistent parameters, missing files.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: solver divergence, quadrature breakdown, invariant violation.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace loggas
