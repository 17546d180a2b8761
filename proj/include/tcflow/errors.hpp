#pragma once

#include <stdexcept>
#include <string>

namespace tcflow {

// Bad case/config input (bad grid sizes, unknown keys, negative properties).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// NaN/Inf detected in a field that must stay finite.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear solver failed to reach tolerance.
struct SolverError : std::runtime_error {
  SolverError(const std::string& msg, double residual)
      : std::runtime_error(msg), final_residual(residual) {}
  double final_residual;
};

// Step rejection signal: caller is expected to retry with a smaller dt.
struct CflViolation : std::runtime_error {
  explicit CflViolation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tcflow
