#include "darkgate/propagator.hpp"

#include <algorithm>
#include <cmath>

namespace darkgate {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th-order solution weights (row 7 of the tableau; FSAL).
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Error weights: b - b_hat (4th-order embedded solution).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
  const HamiltonianFn& h_of_t;
  Matrix h;
  StateVector k1, k2, k3, k4, k5, k6, k7, ytmp, yerr;

  explicit Stepper(const HamiltonianFn& f, int dim)
      : h_of_t(f),
        h(Matrix::Zero(dim, dim)),
        k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim),
        ytmp(dim), yerr(dim) {}

  void rhs(double t, const StateVector& y, StateVector& dydt) {
    h_of_t(t, h);
    dydt.noalias() = h * y;
    dydt *= Complex(0, -1);
  }

  // One trial step from (t, y) with k1 = f(t, y) already computed.
  // On return ytmp holds the 5th-order solution, yerr the error vector,
  // and k7 = f(t + dt, ytmp) (FSAL candidate).
  void step(double t, const StateVector& y, double dt) {
    ytmp = y + dt * (a21 * k1);
    rhs(t + c2 * dt, ytmp, k2);
    ytmp = y + dt * (a31 * k1 + a32 * k2);
    rhs(t + c3 * dt, ytmp, k3);
    ytmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * dt, ytmp, k4);
    ytmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * dt, ytmp, k5);
    ytmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + dt, ytmp, k6);
    ytmp = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + dt, ytmp, k7);
    yerr = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  }
};

}  // namespace

PropagationResult propagate(const HamiltonianFn& h_of_t,
                            const StateVector& psi0, double t0, double t1,
                            const PropagationOptions& opts) {
  if (!(t1 > t0)) {
    throw ConfigError("propagate: t1 must exceed t0");
  }
  if (opts.tol < 1e-13 || opts.tol > 1e-6) {
    throw ConfigError("propagate: tol must lie in [1e-13, 1e-6], got " +
                      std::to_string(opts.tol));
  }
  if (opts.samples < 1) {
    throw ConfigError("propagate: samples must be >= 1");
  }
  const int dim = static_cast<int>(psi0.size());
  const double span = t1 - t0;
  const double max_step =
      opts.max_step > 0 ? std::min(opts.max_step, span) : span / 20.0;
  const double min_step = 1e-6 * span / std::max(1, opts.samples);

  PropagationResult res;
  res.times.reserve(opts.samples + 1);
  res.norms.reserve(opts.samples + 1);
  res.populations.resize(opts.samples + 1, dim);
  if (opts.record_states) res.states.reserve(opts.samples + 1);

  Stepper st(h_of_t, dim);
  StateVector y = psi0;

  auto record = [&](int sample_index, double t, const StateVector& s) {
    res.times.push_back(t);
    res.norms.push_back(s.squaredNorm());
    res.populations.row(sample_index) = s.cwiseAbs2().transpose();
    if (opts.record_states) res.states.push_back(s);
  };

  record(0, t0, y);

  double t = t0;
  double dt = std::min(max_step, span / 100.0);
  st.rhs(t, y, st.k1);

  for (int sample = 1; sample <= opts.samples; ++sample) {
    const double t_sample = t0 + span * sample / opts.samples;
    while (t < t_sample - 1e-14 * span) {
      bool clipped = false;
      double h_try = std::min(dt, max_step);
      if (t + h_try >= t_sample) {
        h_try = t_sample - t;
        clipped = true;
      }
      st.step(t, y, h_try);
      const double err = st.yerr.norm();
      const double limit = opts.tol * std::max(y.norm(), 1e-16);
      const bool finite = std::isfinite(err) && st.ytmp.allFinite();
      const bool accepted = finite && err <= limit;
      if (accepted) {
        t = clipped ? t_sample : t + h_try;
        y.swap(st.ytmp);
        st.k1.swap(st.k7);  // FSAL
        ++res.accepted_steps;
      } else {
        ++res.rejected_steps;
      }
      if (!finite) {
        dt = 0.2 * h_try;
      } else {
        const double ratio = err > 0 ? std::pow(limit / err, 0.2) : 5.0;
        const double proposal = h_try * std::clamp(0.9 * ratio, 0.2, 5.0);
        // A step clipped to the sample grid must not deflate the natural
        // step proposal for the next interval.
        dt = (accepted && clipped) ? std::max(dt, proposal) : proposal;
      }
      if (dt < min_step) {
        throw NumericsError(
            "propagate: step size underflow at t = " + std::to_string(t) +
                " (step " + std::to_string(dt) + " below the floor " +
                std::to_string(min_step) + ")",
            t);
      }
    }
    record(sample, t_sample, y);
  }

  res.final_state = std::move(y);
  return res;
}

PropagationResult propagate(
    const std::function<OperatorMatrix(double)>& h_of_t,
    const StateVector& psi0, double t0, double t1,
    const PropagationOptions& opts) {
  const int dim = static_cast<int>(psi0.size());
  HamiltonianFn fn = [&h_of_t, dim](double t, Matrix& h) {
    const OperatorMatrix op = h_of_t(t);
    if (op.dim() != dim) {
      throw DimensionError(
          "propagate: operator dimension " + std::to_string(op.dim()) +
          " does not match state dimension " + std::to_string(dim));
    }
    h = op.entries();
  };
  return propagate(fn, psi0, t0, t1, opts);
}

PropagationResult propagate_schedule(const Schedule& s, const DecayModel& d,
                                     const StateVector& psi0,
                                     const PropagationOptions& opts) {
  if (psi0.size() != 36) {
    throw DimensionError(
        "propagate_schedule: state must live in the 36-state basis, got "
        "dimension " +
        std::to_string(psi0.size()));
  }
  if (s.segments.empty()) {
    throw ConfigError("propagate_schedule: schedule has no segments");
  }

  PropagationResult total;
  StateVector y = psi0;
  double t_global = 0;
  bool first = true;

  for (const Segment& seg : s.segments) {
    if (seg.duration <= 0) continue;
    const SegmentOperator op = make_segment_operator(seg, d);
    HamiltonianFn fn = [&op](double tau, Matrix& h) { op.eval(tau, h); };

    PropagationOptions seg_opts = opts;
    if (seg_opts.max_step <= 0) {
      double feature = seg.duration;
      for (const auto& pulse : {seg.control_pulse, seg.target_pulse}) {
        if (pulse && pulse->shape == PulseShape::shifted_gaussian) {
          feature = std::min(feature, pulse->sigma);
        }
      }
      seg_opts.max_step = feature / 20.0;
    }

    PropagationResult r = propagate(fn, y, 0.0, seg.duration, seg_opts);

    const int skip = first ? 0 : 1;  // drop duplicated boundary sample
    const long old_rows = static_cast<long>(total.times.size());
    const long new_rows = static_cast<long>(r.times.size()) - skip;
    for (std::size_t i = skip; i < r.times.size(); ++i) {
      total.times.push_back(t_global + r.times[i]);
      total.norms.push_back(r.norms[i]);
    }
    total.populations.conservativeResize(old_rows + new_rows, 36);
    total.populations.bottomRows(new_rows) =
        r.populations.bottomRows(new_rows);
    if (opts.record_states) {
      for (std::size_t i = skip; i < r.states.size(); ++i) {
        total.states.push_back(std::move(r.states[i]));
      }
    }
    total.accepted_steps += r.accepted_steps;
    total.rejected_steps += r.rejected_steps;

    y = std::move(r.final_state);
    t_global += seg.duration;
    first = false;
  }

  if (first) {
    throw ConfigError("propagate_schedule: all segments have zero duration");
  }
  total.final_state = std::move(y);
  return total;
}

double survival_probability(const PropagationResult& r, int state_index) {
  if (state_index < 0 || state_index >= r.final_state.size()) {
    throw DimensionError("survival_probability: state index " +
                         std::to_string(state_index) + " out of range");
  }
  return std::norm(r.final_state[state_index]);
}

double survival_probability(const PropagationResult& r, const Basis& basis,
                            const std::string& label) {
  return survival_probability(r, basis.index_of_label(label));
}

double rydberg_time_integral(const PropagationResult& r, const Basis& basis) {
  if (r.populations.cols() != basis.dim()) {
    throw DimensionError(
        "rydberg_time_integral: basis dimension does not match history");
  }
  Eigen::VectorXd weights(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    weights[i] = basis.rydberg_count(i);
  }
  const Eigen::VectorXd p_ry = r.populations * weights;
  double integral = 0;
  for (std::size_t i = 1; i < r.times.size(); ++i) {
    integral +=
        0.5 * (p_ry[i] + p_ry[i - 1]) * (r.times[i] - r.times[i - 1]);
  }
  return integral;
}

}  // namespace darkgate
