#pragma once

#include <Eigen/Core>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace darkgate {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kPi = std::numbers::pi;

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration, bad preconditions, malformed input files.
// The CLI maps this to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

// Mismatched operator/state dimensions.
struct DimensionError : Error {
  using Error::Error;
};

// Numerical failure during integration or quadrature (step underflow,
// non-finite amplitudes, non-converged integrals). Carries the time at
// which the failure occurred when meaningful. The CLI maps this to exit
// code 3.
struct NumericsError : Error {
  explicit NumericsError(const std::string& msg, double t = 0.0)
      : Error(msg), time(t) {}
  double time;
};

}  // namespace darkgate
