#pragma once

#include <functional>
#include <vector>

#include "darkgate/hamiltonians.hpp"
#include "darkgate/quantum.hpp"
#include "darkgate/types.hpp"

namespace darkgate {

// Fills the (preallocated, square) matrix with H(t). Used by the fast
// propagation path; an OperatorMatrix-returning overload of propagate
// exists for convenience.
using HamiltonianFn = std::function<void(double t, Matrix& h)>;

struct PropagationOptions {
  // Local error per step <= tol * ||psi||. Valid range [1e-13, 1e-6].
  double tol = 1e-10;
  // Diagnostics are sampled on a fixed grid of this many intervals per
  // propagate call, independent of the adaptive internal steps.
  int samples = 2000;
  // Hard cap on the internal step (0 = span/20). Callers resolving
  // pulse features should pass min(segment duration, sigma)/20.
  double max_step = 0;
  // Record the full state at every sample time (costs memory).
  bool record_states = false;
};

struct PropagationResult {
  StateVector final_state;
  std::vector<double> times;   // sample times, includes both endpoints
  std::vector<double> norms;   // ||psi||^2 at sample times
  Eigen::MatrixXd populations;  // sample x basis-state populations
  std::vector<StateVector> states;  // only if record_states
  long accepted_steps = 0;
  long rejected_steps = 0;
};

// Integrates i d/dt psi = H(t) psi from t0 to t1 with an embedded
// adaptive Runge-Kutta 5(4) pair. Works for Hermitian and non-Hermitian
// H. Throws ConfigError for invalid options and NumericsError on step
// underflow or non-finite amplitudes (naming the failure time).
PropagationResult propagate(const HamiltonianFn& h_of_t,
                            const StateVector& psi0, double t0, double t1,
                            const PropagationOptions& opts = {});

// Convenience overload taking an operator-valued function.
PropagationResult propagate(
    const std::function<OperatorMatrix(double)>& h_of_t,
    const StateVector& psi0, double t0, double t1,
    const PropagationOptions& opts = {});

// Propagates a full schedule in the 36-state basis, restarting the
// integrator at every segment boundary (no step straddles a pulse edge)
// and concatenating per-segment histories. opts.samples applies per
// segment; opts.max_step, if zero, is derived per segment as
// min(duration, active Gaussian sigma)/20.
PropagationResult propagate_schedule(const Schedule& s, const DecayModel& d,
                                     const StateVector& psi0,
                                     const PropagationOptions& opts = {});

// |<state index|psi(t1)>|^2 from a propagation result.
double survival_probability(const PropagationResult& r, int state_index);
// Same, addressing the state by its basis label.
double survival_probability(const PropagationResult& r, const Basis& basis,
                            const std::string& label);

// Trapezoid integral over the sampled history of the total Rydberg
// population weighted by the per-state Rydberg label count:
//   integral dt sum_k n_ry(k) |psi_k(t)|^2.
// With decay gamma, the norm loss equals gamma times this integral.
double rydberg_time_integral(const PropagationResult& r, const Basis& basis);

}  // namespace darkgate
