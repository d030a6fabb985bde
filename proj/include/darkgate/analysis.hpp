#pragma once

#include <array>
#include <string>
#include <vector>

#include "darkgate/protocol.hpp"
#include "darkgate/types.hpp"

namespace darkgate {

// Input-averaged analytic error budget for the three-step gate with an
// adiabatic (compensated) target pulse:
//   total = (pi gamma / 4) [5 / omega_t0 + omega_t0 / (4 b^2)]
// split into the control-decay, target-decay and doubly-Rydberg-decay
// contributions. rotation and phase are zero in this budget (no shape
// rotation error for adiabatic pulses; interaction phase assumed
// compensated); the fields exist so reports can carry the full ledger.
struct ErrorBudget {
  double decay_control = 0;
  double decay_target = 0;
  double decay_ryry = 0;
  double rotation = 0;
  double phase = 0;
  double total = 0;
  double eta = 0;         // 5 pi / (4 alpha) with alpha = omega_t0 / b
  double decay_bound = 0;  // reference lower limit 2 gamma / b
};

ErrorBudget analytic_error(double gamma, double b, double omega_t0);

// Per-input error probabilities during step (ii) of the blockade
// comparison gate (decay; rotation only for the square pulse; phase only
// for an interaction-strength uncertainty delta_b).
struct BlockadeErrorRow {
  std::string input;
  double decay = 0;
  double rotation = 0;
  double phase = 0;
};

std::array<BlockadeErrorRow, 4> blockade_error_rows(double gamma, double b_sh,
                                                    double omega_t,
                                                    bool square_pulse,
                                                    double delta_b = 0);

// Exact two-level blockade amplitudes for a constant drive, starting
// from |r1>: the solution of i d/dt (c1, cr) = H2 (c1, cr) with
// H2 = (omega_t/2) off-diagonal + b_sh |rr><rr|. |c1|^2 + |cr|^2 = 1.
struct BlockadeAmplitudes {
  Complex c1;
  Complex cr;
};

BlockadeAmplitudes blockade_square_solution(double omega_t, double b_sh,
                                            double t);

// Drive amplitudes omega_t = b_sh / sqrt(4 k^2 - 1) for which a constant
// 2 pi pulse returns all population to |r1>.
double magic_rabi(double b_sh, int k);

// Adiabatic interaction phase accumulated by the blockaded state:
// quadrature of the exact lower eigenvalue
//   lambda_-(t) = (1/2) (b_sh - sqrt(b_sh^2 + omega_t^2(t)))
// over the pulse. Negative; the |r1> amplitude ends as exp(-i * phase)
// in the adiabatic limit.
double adiabatic_phase(const PulseEnvelope& pulse, double b_sh);

// One row of the error-scaling sweep.
struct SweepRecord {
  double btau = 0;
  PulseShape shape = PulseShape::shifted_gaussian;
  double e_sim = 0;
  double e_solid = 0;   // eta / btau
  double e_dashed = 0;  // eta / btau + alpha^2 / 16
  double fidelity = 0;
  double residual_rydberg = 0;  // worst channel at protocol end
  std::string notes;
};

// 13 log-spaced btau points over [1e3, 1e7] (hits every decade exactly).
std::vector<double> default_btau_grid();

// Runs run_gate for every (btau, target shape) combination; rows are
// ordered by the input grid (shapes inner) regardless of job count.
// A failing row (invalid btau, propagation failure) carries NaNs and the
// failure message in notes; the sweep continues. Empty grid or shape
// list -> empty result.
std::vector<SweepRecord> sweep_btau(const GateConfig& base,
                                    const std::vector<double>& grid,
                                    const std::vector<PulseShape>& shapes,
                                    int jobs = 1);

// Missing population 1 - P_|r1>(T) after driving |r1> through the
// five-channel leakage model with the given pulse.
double leakage_study(const CouplingSet& cs, const PulseEnvelope& pulse,
                     double tol = 1e-11);

}  // namespace darkgate
