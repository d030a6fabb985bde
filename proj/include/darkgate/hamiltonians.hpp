#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darkgate/pulses.hpp"
#include "darkgate/quantum.hpp"
#include "darkgate/types.hpp"

namespace darkgate {

// Pair-interaction parameters (angular frequencies, internal units).
//
//   b      exchange coupling |r r> <-> |a b> (the tuned channel)
//   b_rr   leakage coupling  |r r> <-> |a'b'>
//   b_ab   leakage coupling  |a b> <-> |b'a'>
//   dw     defect of the tuned channel, placed on the target level b
//   dw_rr  leakage defect, placed on the target level b'
//   dw_ab  leakage defect, placed on the target level a'
//   b_sh   blockade shift of the doubly-Rydberg state |r r>
//
// Placing the defects on single target-atom levels is equivalent to pair-
// state shifts here because those levels are reachable only through the
// tagged pair channels.
struct CouplingSet {
  double b = 0;
  double b_rr = 0;
  double b_ab = 0;
  double dw = 0;
  double dw_rr = 0;
  double dw_ab = 0;
  double b_sh = 0;

  // The error model assumes the leakage channels are dispersive
  // (|defect| > |coupling|). Violations are reported as warnings, never
  // errors.
  std::vector<std::string> dispersive_warnings() const;
};

// Uniform decay rate for every Rydberg level of both atoms; qubit levels
// are decay-free.
struct DecayModel {
  double gamma = 0;
};

// Global microwave field acting on the 0 <-> 1 transition of both atoms,
// with per-atom detunings (an atom is parked out of resonance by a large
// detuning on its |0> level). rabi == 0 means no microwave drive.
struct MicrowaveDrive {
  double rabi = 0;
  double phase = 0;
  double detuning_control = 0;
  double detuning_target = 0;
};

// One schedule segment: fixed duration, optional laser envelopes on the
// control (1 <-> r) and target (1 <-> r) transitions, optional microwave
// drive, and the static pair couplings. Pulse-local time runs from 0 at
// the segment start.
struct Segment {
  double duration = 0;
  std::optional<PulseEnvelope> control_pulse;
  std::optional<PulseEnvelope> target_pulse;
  MicrowaveDrive mw;
  CouplingSet couplings;
};

struct Schedule {
  std::vector<Segment> segments;

  double total_duration() const;
  // Segment index containing global time t (boundaries belong to the
  // later segment, the final boundary to the last one).
  int segment_at(double t) const;
  // Global start time of segment i.
  double segment_start(int i) const;
};

// Three-state exchange chain over {|r1>, |rr>, |ab>}:
//   H = (omega_t/2)(|rr><r1| + h.c.) + b (|ab><rr| + h.c.)
OperatorMatrix build_h3(double omega_t, double b);

// Five-state chain over {|r1>, |rr>, |ab>, |a'b'>, |b'a'>}: the three-state
// chain plus the leakage couplings/defects, plus the tuned-channel defect
// c.dw on |ab> (zero in the plain leakage model).
OperatorMatrix build_h5(double omega_t, const CouplingSet& c);

// Two-level blockade system over {|r1>, |rr>}:
//   H = (omega_t/2)(|rr><r1| + h.c.) + b_sh |rr><rr|
OperatorMatrix build_h2_blockade(double omega_t, double b_sh);

// Per-segment evaluator for propagation hot paths: the static part
// (microwave, pair couplings, decay) is assembled once; each evaluation
// copies it and adds the laser terms at segment-local time tau. Holds
// pointers into the Segment, which must outlive the evaluator.
struct SegmentOperator {
  Matrix static_part;
  const PulseEnvelope* control = nullptr;
  const PulseEnvelope* target = nullptr;
  Complex control_drive{1, 0};
  Complex target_drive{1, 0};
  std::vector<std::pair<int, int>> control_pairs;
  std::vector<std::pair<int, int>> target_pairs;

  void eval(double tau, Matrix& out) const;
};

SegmentOperator make_segment_operator(const Segment& seg,
                                      const DecayModel& decay);

// Full 36x36 two-atom Hamiltonian of the schedule at global time t
// (microwave + lasers + pair interactions; no decay). Hermitian.
OperatorMatrix build_full(const Schedule& s, double t);

// H - (i/2) gamma * (number of Rydberg labels per basis state). The result
// is non-Hermitian whenever gamma > 0.
OperatorMatrix apply_decay(const OperatorMatrix& h, const DecayModel& d,
                           const Basis& basis);

// Hot-path writer: fills `out` (dim x dim, preallocated) with the full
// Hamiltonian at time t including the decay term. Equivalent to
// apply_decay(build_full(s, t), d, full_two_atom) but reuses storage.
void write_full(const Schedule& s, const DecayModel& d, double t, Matrix& out);

}  // namespace darkgate
