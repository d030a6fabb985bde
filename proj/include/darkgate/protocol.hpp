#pragma once

#include <array>
#include <string>

#include <Eigen/Core>

#include "darkgate/hamiltonians.hpp"
#include "darkgate/propagator.hpp"
#include "darkgate/types.hpp"

namespace darkgate {

// Which pair interaction implements the conditional phase.
//   exchange: resonant |rr> <-> |ab> exchange hosting the two-atom dark
//             state (plus dispersive leakage channels).
//   blockade: diagonal shift b_sh of |rr>; comparison gate.
enum class InteractionMode { exchange, blockade };

// How the four computational inputs are produced.
//   ideal:     exact basis states (gate error only).
//   microwave: slow global microwave pulses prepare each input from
//              |00>; the deterministic preparation phases are divided
//              out of the extracted gate matrix.
enum class PrepMode { ideal, microwave };

// Policy for the tuned-channel defect dw.
//   compensate:     dw = -(second-order shift of |ab> from its leakage
//                   channel) = + b_ab^2 / dw_ab, cancelling the dark-state
//                   phase drift.
//   explicit_value: dw = dw_over_b * b.
enum class DefectPolicy { compensate, explicit_value };

// Complete gate parameter set, in internal units b = 1 (time unit 1/b).
// The only dimensional anchor is b_mhz, used for reporting in physical
// units; all dynamics depend on the dimensionless ratios alone.
struct GateConfig {
  double btau = 1e6;     // interaction strength x Rydberg lifetime
  double alpha = 0.10472;  // peak target Rabi / b
  double control_ratio = 4.0;  // peak control Rabi / peak target Rabi
  PulseShape target_shape = PulseShape::shifted_gaussian;
  PulseShape control_shape = PulseShape::shifted_gaussian;
  double sigma_over_t = 0.2;  // Gaussian sigma / pulse duration
  double gap_fraction = 0.05;  // inter-step gap / target pulse duration

  InteractionMode interaction = InteractionMode::exchange;
  double brr_over_b = 0.5;
  double bab_over_b = 0.5;
  double dwrr_over_brr = 3.0;
  double dwab_over_bab = 3.0;
  DefectPolicy dw_policy = DefectPolicy::compensate;
  double dw_over_b = 0.0;  // used when dw_policy == explicit_value

  // Step (ii) may be split into two pi pulses, the second with laser
  // phase split_phase (phase-echo compensation for the blockade gate).
  bool split_target_pulse = false;
  double split_phase = 0.0;

  PrepMode prep = PrepMode::ideal;
  double mw_pi_time_factor = 10.0;  // microwave pi time / target pulse time
  double mw_detuning_ratio = 100.0;  // parking detuning / microwave Rabi

  double tol = 1e-10;
  int samples = 2000;
  int jobs = 1;  // parallel input-channel propagations

  double b_mhz = 350.0;  // reporting scale only

  // Derived quantities (internal units).
  double omega_t0() const { return alpha; }
  double t_target() const { return 2.0 * kPi / alpha; }
  double gamma() const { return 1.0 / btau; }

  // Resolved pair couplings including the defect policy and the
  // interaction mode.
  CouplingSet couplings() const;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct ChannelDiagnostics {
  double final_norm2 = 0;        // ||psi||^2 at the end of the protocol
  double residual_rydberg = 0;   // population left outside the qubit levels
  double accumulated_phase = 0;  // arg(U_jj) relative to the ideal gate
  double rydberg_integral = 0;   // integral dt of sum n_ry |psi_k|^2
};

struct GateResult {
  Eigen::Matrix4cd u;  // over {|00>, |01>, |10>, |11>}
  double fidelity = 0;
  double error = 0;  // 1 - fidelity
  std::array<ChannelDiagnostics, 4> channels;
};

// The ideal controlled-phase target diag(1, -1, -1, -1).
Eigen::Matrix4cd ideal_cz();

// Microwave preparation prefix for one computational input (0..3 for
// |00>, |01>, |10>, |11>): a global microwave pi pulse, resonant for
// atoms that must flip to |1> and parked far off resonance for atoms
// that must stay in |0>, followed by a settling gap. Starting state is
// always |00>.
Schedule prepare_input(const GateConfig& cfg, int input_label);

// The three-step gate body: (i) control pi pulse, gap, (ii) target 2 pi
// pulse (optionally split into two pi halves with a relative laser
// phase), gap, (iii) control pi pulse.
Schedule make_gate_schedule(const GateConfig& cfg);

// Runs all four computational inputs through preparation plus the gate
// body, extracts the 4x4 gate matrix in the computational basis and the
// average fidelity against ideal_cz().
GateResult run_gate(const GateConfig& cfg);

// Average two-qubit gate fidelity F = [Tr(M M^dag) + |Tr M|^2] / 20 with
// M = target^dag * u. No normalisation: norm loss lowers F.
double pedersen_fidelity(const Eigen::Matrix4cd& u,
                         const Eigen::Matrix4cd& target);

// Right-composes the single-qubit phase gate Z(phi) = diag(1, e^{-i phi})
// on the target register and recomputes the fidelity.
GateResult apply_phase_correction(const GateResult& r, double phi);

}  // namespace darkgate
