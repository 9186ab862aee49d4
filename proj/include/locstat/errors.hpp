#pragma once

#include <stdexcept>
#include <string>

namespace locstat {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (non-finite x, dt < 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inadmissible model parameters (NIG with alpha^2 <= beta^2, theta_1 == theta_2, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Inconsistent run configuration: unstable Euler step, invalid grid, unknown id.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Requested data outside what was simulated.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A kernel failed the localizing-kernel checks or is negative where a square root is taken.
class KernelError : public Error {
 public:
  using Error::Error;
};

// Numerical failure: singular resolvent, Riccati non-convergence, ...
class NumericError : public Error {
 public:
  using Error::Error;
};

// An estimator could not produce a value (degenerate window, all candidates infeasible).
class EstimationError : public Error {
 public:
  using Error::Error;
};

class OptimizationError : public Error {
 public:
  using Error::Error;
};

}  // namespace locstat
