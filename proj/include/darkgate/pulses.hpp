#pragma once

#include <functional>
#include <string>

#include "darkgate/types.hpp"

namespace darkgate {

enum class PulseShape { shifted_gaussian, sine, square };

// Canonical names: "gaussian", "sine", "square".
std::string to_string(PulseShape s);
// Accepts the canonical names plus "shifted_gaussian"; throws ConfigError.
PulseShape parse_pulse_shape(const std::string& name);

// Real, non-negative Rabi-frequency envelope on [0, T] with exact area
// control. The laser phase is constant per pulse and stored alongside;
// the envelope itself is real.
struct PulseEnvelope {
  PulseShape shape = PulseShape::square;
  double duration = 0;     // T
  double sigma = 0;        // shifted_gaussian only
  double amplitude = 0;    // closed-form prefactor fixing the area
  double target_area = 0;  // theta = integral of Omega over [0, T]
  double phase = 0;        // laser phase, radians

  // Omega(t) for t in [0, T]; zero outside.
  double value(double t) const;
  // dOmega/dt, analytic (zero for square).
  double derivative(double t) const;
  // Maximum of Omega over [0, T].
  double peak() const;
};

// Shifted Gaussian: Omega(t) = A [exp(-(t-T/2)^2 / 2 sigma^2) - exp(-T^2 / 8 sigma^2)],
// vanishing at both ends. A is the exact closed form making the area theta:
// A = theta / [sigma sqrt(2 pi) erf(T / (2 sqrt(2) sigma)) - T exp(-T^2 / 8 sigma^2)].
PulseEnvelope make_shifted_gaussian(double T, double sigma, double theta);

// Half-sine: Omega(t) = (theta pi / 2T) sin(pi t / T); area theta exactly.
PulseEnvelope make_sine(double T, double theta);

// Flat: Omega(t) = theta / T on [0, T].
PulseEnvelope make_square(double T, double theta);

// Adaptive-Simpson quadrature of f over [a, b] to the given relative
// tolerance (absolute floor abs_floor for integrals near zero).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12,
                          double abs_floor = 1e-300);

// Numerically integrated pulse area (the closed forms make this equal
// target_area to high precision; exposed for verification).
double pulse_area(const PulseEnvelope& p, double rel_tol = 1e-13);

// Pulse-shape error coefficient
//   kappa = [integral of P_ry dt] * B^2 T / pi^2,
//   P_ry(t) = Omega^2(t) / (4 B^2 + Omega^2(t)),
// evaluated by quadrature at the given exchange strength b. Requires a
// 2 pi pulse with peak < b. A convergence guard recomputes kappa at 2b
// and throws NumericsError if the two disagree by more than 0.5%
// (b too small relative to the peak for the coefficient to be meaningful).
double kappa_factor(const PulseEnvelope& p, double b);

}  // namespace darkgate
