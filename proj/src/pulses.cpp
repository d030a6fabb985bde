#include "darkgate/pulses.hpp"

#include <cmath>

namespace darkgate {

std::string to_string(PulseShape s) {
  switch (s) {
    case PulseShape::shifted_gaussian:
      return "gaussian";
    case PulseShape::sine:
      return "sine";
    case PulseShape::square:
      return "square";
  }
  throw ConfigError("to_string: unknown pulse shape");
}

PulseShape parse_pulse_shape(const std::string& name) {
  if (name == "gaussian" || name == "shifted_gaussian")
    return PulseShape::shifted_gaussian;
  if (name == "sine") return PulseShape::sine;
  if (name == "square") return PulseShape::square;
  throw ConfigError("unknown pulse shape '" + name +
                    "' (expected gaussian, sine or square)");
}

double PulseEnvelope::value(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  switch (shape) {
    case PulseShape::shifted_gaussian: {
      // The smooth shapes vanish identically at the endpoints; rounding
      // in the pedestal subtraction must not leave a 1e-16 residue there.
      if (t <= 0.0 || t >= duration) return 0.0;
      const double u = (t - 0.5 * duration) / sigma;
      const double pedestal =
          std::exp(-duration * duration / (8.0 * sigma * sigma));
      return amplitude * (std::exp(-0.5 * u * u) - pedestal);
    }
    case PulseShape::sine:
      if (t <= 0.0 || t >= duration) return 0.0;
      return amplitude * std::sin(kPi * t / duration);
    case PulseShape::square:
      return amplitude;
  }
  return 0.0;
}

double PulseEnvelope::derivative(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  switch (shape) {
    case PulseShape::shifted_gaussian: {
      const double u = (t - 0.5 * duration) / sigma;
      return -amplitude * (u / sigma) * std::exp(-0.5 * u * u);
    }
    case PulseShape::sine:
      return amplitude * (kPi / duration) * std::cos(kPi * t / duration);
    case PulseShape::square:
      return 0.0;
  }
  return 0.0;
}

double PulseEnvelope::peak() const {
  switch (shape) {
    case PulseShape::shifted_gaussian:
      return amplitude *
             (1.0 - std::exp(-duration * duration / (8.0 * sigma * sigma)));
    case PulseShape::sine:
    case PulseShape::square:
      return amplitude;
  }
  return 0.0;
}

PulseEnvelope make_shifted_gaussian(double T, double sigma, double theta) {
  if (T <= 0) throw ConfigError("make_shifted_gaussian: duration must be > 0");
  if (sigma <= 0) throw ConfigError("make_shifted_gaussian: sigma must be > 0");
  if (theta <= 0) throw ConfigError("make_shifted_gaussian: area must be > 0");
  const double pedestal = std::exp(-T * T / (8.0 * sigma * sigma));
  const double gauss_area =
      sigma * std::sqrt(2.0 * kPi) * std::erf(T / (2.0 * std::sqrt(2.0) * sigma));
  const double denom = gauss_area - T * pedestal;
  if (denom <= 0) {
    throw ConfigError(
        "make_shifted_gaussian: sigma too large relative to T (pedestal "
        "subtraction leaves no area)");
  }
  PulseEnvelope p;
  p.shape = PulseShape::shifted_gaussian;
  p.duration = T;
  p.sigma = sigma;
  p.amplitude = theta / denom;
  p.target_area = theta;
  return p;
}

PulseEnvelope make_sine(double T, double theta) {
  if (T <= 0) throw ConfigError("make_sine: duration must be > 0");
  if (theta <= 0) throw ConfigError("make_sine: area must be > 0");
  PulseEnvelope p;
  p.shape = PulseShape::sine;
  p.duration = T;
  p.amplitude = theta * kPi / (2.0 * T);
  p.target_area = theta;
  return p;
}

PulseEnvelope make_square(double T, double theta) {
  if (T <= 0) throw ConfigError("make_square: duration must be > 0");
  if (theta <= 0) throw ConfigError("make_square: area must be > 0");
  PulseEnvelope p;
  p.shape = PulseShape::square;
  p.duration = T;
  p.amplitude = theta / T;
  p.target_area = theta;
  return p;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double eps, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw NumericsError("integrate_adaptive: recursion limit reached", m);
  }
  if (std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_floor) {
  if (b == a) return 0.0;
  // Seed the error budget with a coarse magnitude estimate; two refinement
  // sweeps stabilise it for peaked integrands.
  double scale = 0.0;
  const int n0 = 64;
  for (int i = 0; i <= n0; ++i) {
    scale += std::abs(f(a + (b - a) * i / n0));
  }
  scale = scale / (n0 + 1) * std::abs(b - a);
  const double eps = std::max(rel_tol * scale, abs_floor);
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, eps, 60);
}

double pulse_area(const PulseEnvelope& p, double rel_tol) {
  return integrate_adaptive([&p](double t) { return p.value(t); }, 0.0,
                            p.duration, rel_tol);
}

namespace {

double kappa_at(const PulseEnvelope& p, double b) {
  const double integral = integrate_adaptive(
      [&p, b](double t) {
        const double w = p.value(t);
        return w * w / (4.0 * b * b + w * w);
      },
      0.0, p.duration, 1e-12);
  return integral * b * b * p.duration / (kPi * kPi);
}

}  // namespace

double kappa_factor(const PulseEnvelope& p, double b) {
  if (b <= 0) throw ConfigError("kappa_factor: b must be > 0");
  const double theta = pulse_area(p);
  if (std::abs(theta - 2.0 * kPi) > 1e-9 * 2.0 * kPi) {
    throw ConfigError("kappa_factor: pulse must have area 2 pi, got area " +
                      std::to_string(theta));
  }
  if (p.peak() >= b) {
    throw ConfigError("kappa_factor: pulse peak " + std::to_string(p.peak()) +
                      " must be below b = " + std::to_string(b));
  }
  const double k1 = kappa_at(p, b);
  const double k2 = kappa_at(p, 2.0 * b);
  if (std::abs(k2 - k1) > 5e-3 * std::abs(k1)) {
    throw NumericsError(
        "kappa_factor: value not converged in b (kappa(b) = " +
        std::to_string(k1) + ", kappa(2b) = " + std::to_string(k2) +
        "); increase b relative to the pulse peak");
  }
  return k1;
}

}  // namespace darkgate
