#pragma once

#include <stdexcept>
#include <string>

namespace qb {

// Invalid arguments / configuration (CLI exit code 1).
struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failures: ambiguous null spaces, integrator underflow,
// non-convergence (CLI exit code 2).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qb
