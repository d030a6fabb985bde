#include "darkgate/hamiltonians.hpp"

#include <cmath>

namespace darkgate {

namespace {

// Product index of (control level c, target level t) in the full basis.
constexpr int idx(int c, int t) { return 6 * c + t; }

constexpr int kR1 = idx(2, 1);    // |r 1>
constexpr int kRR = idx(2, 2);    // |r r>
constexpr int kAB = idx(3, 3);    // |a b>
constexpr int kApBp = idx(4, 4);  // |a'b'>
constexpr int kBpAp = idx(5, 5);  // |b'a'>

}  // namespace

std::vector<std::string> CouplingSet::dispersive_warnings() const {
  std::vector<std::string> w;
  if (b_rr != 0.0 && std::abs(dw_rr) <= std::abs(b_rr)) {
    w.push_back(
        "leakage channel |rr> <-> |a'b'> is not dispersive: |dw_rr| <= |b_rr| "
        "(the perturbative error model does not apply)");
  }
  if (b_ab != 0.0 && std::abs(dw_ab) <= std::abs(b_ab)) {
    w.push_back(
        "leakage channel |ab> <-> |b'a'> is not dispersive: |dw_ab| <= |b_ab| "
        "(the perturbative error model does not apply)");
  }
  return w;
}

double Schedule::total_duration() const {
  double sum = 0;
  for (const auto& seg : segments) sum += seg.duration;
  return sum;
}

int Schedule::segment_at(double t) const {
  if (segments.empty()) throw ConfigError("Schedule: no segments");
  double start = 0;
  for (int i = 0; i < static_cast<int>(segments.size()); ++i) {
    const double end = start + segments[i].duration;
    if (t < end) return i;
    start = end;
  }
  if (t <= start + 1e-12 * std::max(start, 1.0)) {
    return static_cast<int>(segments.size()) - 1;
  }
  throw ConfigError("Schedule: time " + std::to_string(t) +
                    " is outside the schedule span [0, " +
                    std::to_string(start) + "]");
}

double Schedule::segment_start(int i) const {
  double start = 0;
  for (int k = 0; k < i; ++k) start += segments.at(k).duration;
  return start;
}

OperatorMatrix build_h3(double omega_t, double b) {
  if (b <= 0) throw ConfigError("build_h3: b must be > 0");
  Matrix h = Matrix::Zero(3, 3);
  h(1, 0) = 0.5 * omega_t;  // |rr><r1|
  h(0, 1) = 0.5 * omega_t;
  h(2, 1) = b;  // |ab><rr|
  h(1, 2) = b;
  return OperatorMatrix(std::move(h), true);
}

OperatorMatrix build_h5(double omega_t, const CouplingSet& c) {
  if (c.b <= 0) throw ConfigError("build_h5: couplings.b must be > 0");
  Matrix h = Matrix::Zero(5, 5);
  h(1, 0) = 0.5 * omega_t;
  h(0, 1) = 0.5 * omega_t;
  h(2, 1) = c.b;
  h(1, 2) = c.b;
  h(2, 2) = c.dw;
  h(3, 1) = c.b_rr;  // |a'b'><rr|
  h(1, 3) = c.b_rr;
  h(3, 3) = c.dw_rr;
  h(4, 2) = c.b_ab;  // |b'a'><ab|
  h(2, 4) = c.b_ab;
  h(4, 4) = c.dw_ab;
  return OperatorMatrix(std::move(h), true);
}

OperatorMatrix build_h2_blockade(double omega_t, double b_sh) {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 0) = 0.5 * omega_t;
  h(0, 1) = 0.5 * omega_t;
  h(1, 1) = b_sh;
  return OperatorMatrix(std::move(h), true);
}

SegmentOperator make_segment_operator(const Segment& seg,
                                      const DecayModel& decay) {
  SegmentOperator op;
  op.static_part = Matrix::Zero(36, 36);
  Matrix& h = op.static_part;

  // Microwave field on the 0 <-> 1 transition of both atoms.
  if (seg.mw.rabi != 0.0) {
    const Complex drive =
        0.5 * seg.mw.rabi * std::exp(Complex(0, -seg.mw.phase));
    for (int t = 0; t < 6; ++t) {
      h(idx(0, t), idx(0, t)) += -seg.mw.detuning_control;
      h(idx(1, t), idx(0, t)) += drive;
      h(idx(0, t), idx(1, t)) += std::conj(drive);
    }
    for (int c = 0; c < 6; ++c) {
      h(idx(c, 0), idx(c, 0)) += -seg.mw.detuning_target;
      h(idx(c, 1), idx(c, 0)) += drive;
      h(idx(c, 0), idx(c, 1)) += std::conj(drive);
    }
  }

  // Pair interactions: defects on single target-atom levels plus the
  // exchange, leakage and blockade couplings.
  const CouplingSet& cs = seg.couplings;
  for (int c = 0; c < 6; ++c) {
    h(idx(c, 3), idx(c, 3)) += cs.dw;     // target b
    h(idx(c, 4), idx(c, 4)) += cs.dw_rr;  // target b'
    h(idx(c, 5), idx(c, 5)) += cs.dw_ab;  // target a'
  }
  h(kAB, kRR) += cs.b;
  h(kRR, kAB) += cs.b;
  h(kApBp, kRR) += cs.b_rr;
  h(kRR, kApBp) += cs.b_rr;
  h(kBpAp, kAB) += cs.b_ab;
  h(kAB, kBpAp) += cs.b_ab;
  h(kRR, kRR) += cs.b_sh;

  // Decay: every Rydberg label (per-atom level index >= 2) contributes
  // -(i/2) gamma to the diagonal.
  if (decay.gamma != 0.0) {
    for (int c = 0; c < 6; ++c) {
      for (int t = 0; t < 6; ++t) {
        const int n_ry = (c >= 2 ? 1 : 0) + (t >= 2 ? 1 : 0);
        if (n_ry > 0) {
          h(idx(c, t), idx(c, t)) += Complex(0, -0.5 * decay.gamma * n_ry);
        }
      }
    }
  }

  // Laser couplings, filled per evaluation from the envelopes.
  if (seg.control_pulse) {
    op.control = &*seg.control_pulse;
    op.control_drive = std::exp(Complex(0, -seg.control_pulse->phase));
    for (int t = 0; t < 6; ++t) {
      op.control_pairs.emplace_back(idx(2, t), idx(1, t));
    }
  }
  if (seg.target_pulse) {
    op.target = &*seg.target_pulse;
    op.target_drive = std::exp(Complex(0, -seg.target_pulse->phase));
    for (int c = 0; c < 6; ++c) {
      op.target_pairs.emplace_back(idx(c, 2), idx(c, 1));
    }
  }
  return op;
}

void SegmentOperator::eval(double tau, Matrix& out) const {
  out = static_part;
  if (control != nullptr) {
    const Complex amp = 0.5 * control->value(tau) * control_drive;
    for (const auto& [up, lo] : control_pairs) {
      out(up, lo) += amp;
      out(lo, up) += std::conj(amp);
    }
  }
  if (target != nullptr) {
    const Complex amp = 0.5 * target->value(tau) * target_drive;
    for (const auto& [up, lo] : target_pairs) {
      out(up, lo) += amp;
      out(lo, up) += std::conj(amp);
    }
  }
}

OperatorMatrix build_full(const Schedule& s, double t) {
  const int i = s.segment_at(t);
  const SegmentOperator op = make_segment_operator(s.segments[i], DecayModel{});
  Matrix h(36, 36);
  op.eval(t - s.segment_start(i), h);
  return OperatorMatrix(std::move(h), true);
}

OperatorMatrix apply_decay(const OperatorMatrix& h, const DecayModel& d,
                           const Basis& basis) {
  if (basis.dim() != h.dim()) {
    throw DimensionError("apply_decay: basis dimension " +
                         std::to_string(basis.dim()) +
                         " does not match operator dimension " +
                         std::to_string(h.dim()));
  }
  if (d.gamma < 0) throw ConfigError("apply_decay: gamma must be >= 0");
  Matrix out = h.entries();
  for (int i = 0; i < basis.dim(); ++i) {
    out(i, i) -= Complex(0, 0.5 * d.gamma * basis.rydberg_count(i));
  }
  return OperatorMatrix(std::move(out), d.gamma == 0.0 && h.hermitian());
}

void write_full(const Schedule& s, const DecayModel& d, double t, Matrix& out) {
  const int i = s.segment_at(t);
  const SegmentOperator op = make_segment_operator(s.segments[i], d);
  op.eval(t - s.segment_start(i), out);
}

}  // namespace darkgate
