#pragma once

#include <stdexcept>

namespace rcfdtd {

/// Invalid or inconsistent user-facing configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runtime numerical failure: singular ghost system, NaN field values,
/// failed bracketing, ambiguous root classification (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rcfdtd
