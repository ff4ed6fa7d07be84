#pragma once

#include <stdexcept>
#include <string>

namespace layerpot {

enum class ErrorKind {
  invalid_curve,
  projection_failure,
  flat_point,
  singular_kernel,
  singular_evaluation,
  coefficient_domain,
  size_mismatch,
  solver,
  input,
  domain,
  fit,
};

const char* to_string(ErrorKind kind);

/// Numerical failure raised by any layerpot routine. The CLI maps these to
/// exit code 3; configuration problems are reported separately (ConfigError).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_curve: return "invalid curve";
    case ErrorKind::projection_failure: return "projection failure";
    case ErrorKind::flat_point: return "flat point unsupported";
    case ErrorKind::singular_kernel: return "singular kernel";
    case ErrorKind::singular_evaluation: return "singular evaluation";
    case ErrorKind::coefficient_domain: return "coefficient domain";
    case ErrorKind::size_mismatch: return "size mismatch";
    case ErrorKind::solver: return "solver";
    case ErrorKind::input: return "input";
    case ErrorKind::domain: return "domain";
    case ErrorKind::fit: return "fit";
  }
  return "unknown";
}

}  // namespace layerpot
