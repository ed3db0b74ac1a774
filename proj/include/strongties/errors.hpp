#pragma once

#include <stdexcept>

namespace strongties {

// Base class for all library errors. The CLI maps these to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A probability weight is negative.
struct NegativeWeightError : Error {
  using Error::Error;
};

// Probability weights do not sum to 1 within tolerance.
struct NotNormalizedError : Error {
  using Error::Error;
};

// Policy or distribution name not among the built-ins.
struct UnknownPolicyError : Error {
  using Error::Error;
};

// Family size distribution places all mass on zero children.
struct ZeroSupportError : Error {
  using Error::Error;
};

// Fixed-point iteration hit its cap. Numerical pathology, not a model state.
struct NoConvergenceError : Error {
  using Error::Error;
};

// Unrecognized graph export format.
struct UnknownFormatError : Error {
  using Error::Error;
};

// Malformed config document.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace strongties
