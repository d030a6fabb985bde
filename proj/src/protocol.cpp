#include "darkgate/protocol.hpp"

#include <cmath>
#include <future>
#include <utility>

namespace darkgate {

namespace {

// Product indices of the computational states |00>, |01>, |10>, |11>.
constexpr int kQubitIndex[4] = {0, 1, 6, 7};

const Basis& full_basis() {
  static const Basis b = Basis::full_two_atom();
  return b;
}

}  // namespace

CouplingSet GateConfig::couplings() const {
  CouplingSet cs;
  if (interaction == InteractionMode::exchange) {
    cs.b = 1.0;
    cs.b_rr = brr_over_b;
    cs.b_ab = bab_over_b;
    cs.dw_rr = dwrr_over_brr * cs.b_rr;
    cs.dw_ab = dwab_over_bab * cs.b_ab;
    if (dw_policy == DefectPolicy::compensate) {
      // Second-order shift of |ab> from the |b'a'> channel is
      // -b_ab^2/dw_ab; the compensating defect is its negative.
      cs.dw = (cs.b_ab != 0.0 && cs.dw_ab != 0.0)
                  ? cs.b_ab * cs.b_ab / cs.dw_ab
                  : 0.0;
    } else {
      cs.dw = dw_over_b * cs.b;
    }
  } else {
    cs.b_sh = 1.0;
  }
  return cs;
}

void GateConfig::validate() const {
  if (!(btau > 0)) throw ConfigError("config field 'btau' must be > 0");
  if (!(alpha > 0) || alpha >= 1.0) {
    throw ConfigError("config field 'alpha' must lie in (0, 1)");
  }
  if (!(control_ratio > 0)) {
    throw ConfigError("config field 'control_ratio' must be > 0");
  }
  if (!(sigma_over_t >= 0.05 && sigma_over_t <= 0.5)) {
    throw ConfigError("config field 'sigma_over_t' must lie in [0.05, 0.5]");
  }
  if (gap_fraction < 0) {
    throw ConfigError("config field 'gap_fraction' must be >= 0");
  }
  if (interaction == InteractionMode::exchange &&
      dw_policy == DefectPolicy::compensate && bab_over_b != 0.0 &&
      dwab_over_bab == 0.0) {
    throw ConfigError(
        "config field 'dwab_over_bab' must be nonzero to auto-compensate "
        "the tuned-channel defect");
  }
  if (!(mw_pi_time_factor > 0)) {
    throw ConfigError("config field 'mw_pi_time_factor' must be > 0");
  }
  if (mw_detuning_ratio < 0) {
    throw ConfigError("config field 'mw_detuning_ratio' must be >= 0");
  }
  if (tol < 1e-13 || tol > 1e-6) {
    throw ConfigError("config field 'tol' must lie in [1e-13, 1e-6]");
  }
  if (samples < 10 || samples > 200000) {
    throw ConfigError("config field 'samples' must lie in [10, 200000]");
  }
  if (jobs < 1) throw ConfigError("config field 'jobs' must be >= 1");
  if (!(b_mhz > 0)) throw ConfigError("config field 'b_mhz' must be > 0");
}

Eigen::Matrix4cd ideal_cz() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1;
  u(1, 1) = -1;
  u(2, 2) = -1;
  u(3, 3) = -1;
  return u;
}

namespace {

PulseEnvelope make_pulse(PulseShape shape, double T, double sigma_over_t,
                         double theta, double phase = 0.0) {
  PulseEnvelope p;
  switch (shape) {
    case PulseShape::shifted_gaussian:
      p = make_shifted_gaussian(T, sigma_over_t * T, theta);
      break;
    case PulseShape::sine:
      p = make_sine(T, theta);
      break;
    case PulseShape::square:
      p = make_square(T, theta);
      break;
  }
  p.phase = phase;
  return p;
}

Segment make_gap(const GateConfig& cfg) {
  Segment g;
  g.duration = cfg.gap_fraction * cfg.t_target();
  g.couplings = cfg.couplings();
  return g;
}

}  // namespace

Schedule prepare_input(const GateConfig& cfg, int input_label) {
  if (input_label < 0 || input_label > 3) {
    throw ConfigError("prepare_input: input label must be 0..3");
  }
  Schedule s;
  if (cfg.prep == PrepMode::ideal) return s;

  const bool flip_control = (input_label & 2) != 0;
  const bool flip_target = (input_label & 1) != 0;
  const double t_mw = cfg.mw_pi_time_factor * cfg.t_target();
  const double omega_mw = kPi / t_mw;
  const double park = cfg.mw_detuning_ratio * omega_mw;

  Segment mw;
  mw.duration = t_mw;
  mw.mw.rabi = omega_mw;
  mw.mw.detuning_control = flip_control ? 0.0 : park;
  mw.mw.detuning_target = flip_target ? 0.0 : park;
  mw.couplings = cfg.couplings();
  s.segments.push_back(mw);

  const Segment gap = make_gap(cfg);
  if (gap.duration > 0) s.segments.push_back(gap);
  return s;
}

Schedule make_gate_schedule(const GateConfig& cfg) {
  const double t_t = cfg.t_target();
  const double omega_c0 = cfg.control_ratio * cfg.omega_t0();
  const double t_c = kPi / omega_c0;
  const CouplingSet cs = cfg.couplings();
  const Segment gap = make_gap(cfg);

  Schedule s;
  auto push_control_pi = [&]() {
    Segment seg;
    seg.duration = t_c;
    seg.control_pulse =
        make_pulse(cfg.control_shape, t_c, cfg.sigma_over_t, kPi);
    seg.couplings = cs;
    s.segments.push_back(seg);
  };

  push_control_pi();  // step (i)
  if (gap.duration > 0) s.segments.push_back(gap);

  if (cfg.split_target_pulse) {
    for (int half = 0; half < 2; ++half) {
      Segment seg;
      seg.duration = 0.5 * t_t;
      seg.target_pulse =
          make_pulse(cfg.target_shape, 0.5 * t_t, cfg.sigma_over_t, kPi,
                     half == 1 ? cfg.split_phase : 0.0);
      seg.couplings = cs;
      s.segments.push_back(seg);
    }
  } else {
    Segment seg;
    seg.duration = t_t;
    seg.target_pulse =
        make_pulse(cfg.target_shape, t_t, cfg.sigma_over_t, 2.0 * kPi);
    seg.couplings = cs;
    s.segments.push_back(seg);
  }

  if (gap.duration > 0) s.segments.push_back(gap);
  push_control_pi();  // step (iii)
  return s;
}

namespace {

struct ChannelOutput {
  Eigen::Vector4cd column;
  ChannelDiagnostics diag;
};

ChannelOutput run_channel(const GateConfig& cfg, int j) {
  Schedule s = prepare_input(cfg, j);
  const Schedule body = make_gate_schedule(cfg);
  s.segments.insert(s.segments.end(), body.segments.begin(),
                    body.segments.end());

  StateVector psi0 = StateVector::Zero(36);
  psi0[cfg.prep == PrepMode::ideal ? kQubitIndex[j] : 0] = 1.0;

  PropagationOptions opts;
  opts.tol = cfg.tol;
  opts.samples = cfg.samples;

  const PropagationResult r =
      propagate_schedule(s, DecayModel{cfg.gamma()}, psi0, opts);

  // Deterministic preparation phases: each resonant microwave pi flip
  // contributes -i; divide them out so the gate matrix is referenced to
  // ideally prepared inputs.
  Complex prep_phase = 1.0;
  if (cfg.prep == PrepMode::microwave) {
    const int flips = ((j & 1) != 0 ? 1 : 0) + ((j & 2) != 0 ? 1 : 0);
    const Complex mi(0, -1);
    for (int f = 0; f < flips; ++f) prep_phase *= mi;
  }

  ChannelOutput out;
  for (int i = 0; i < 4; ++i) {
    out.column[i] = r.final_state[kQubitIndex[i]] / prep_phase;
  }

  const Basis& basis = full_basis();
  out.diag.final_norm2 = r.final_state.squaredNorm();
  double ry = 0;
  for (int i = 0; i < basis.dim(); ++i) {
    if (basis.rydberg_count(i) > 0) ry += std::norm(r.final_state[i]);
  }
  out.diag.residual_rydberg = ry;
  out.diag.rydberg_integral = rydberg_time_integral(r, basis);
  const Complex ideal_jj = ideal_cz()(j, j);
  out.diag.accumulated_phase = std::arg(out.column[j] * std::conj(ideal_jj));
  return out;
}

}  // namespace

GateResult run_gate(const GateConfig& cfg) {
  cfg.validate();

  GateResult res;
  if (cfg.jobs > 1) {
    std::array<std::future<ChannelOutput>, 4> futures;
    for (int j = 0; j < 4; ++j) {
      futures[j] = std::async(std::launch::async, run_channel, cfg, j);
    }
    for (int j = 0; j < 4; ++j) {
      ChannelOutput out = futures[j].get();
      res.u.col(j) = out.column;
      res.channels[j] = out.diag;
    }
  } else {
    for (int j = 0; j < 4; ++j) {
      ChannelOutput out = run_channel(cfg, j);
      res.u.col(j) = out.column;
      res.channels[j] = out.diag;
    }
  }

  res.fidelity = pedersen_fidelity(res.u, ideal_cz());
  res.error = 1.0 - res.fidelity;
  return res;
}

double pedersen_fidelity(const Eigen::Matrix4cd& u,
                         const Eigen::Matrix4cd& target) {
  const Eigen::Matrix4cd m = target.adjoint() * u;
  const double trace_mmdag = (m * m.adjoint()).trace().real();
  const Complex trace_m = m.trace();
  return (trace_mmdag + std::norm(trace_m)) / 20.0;
}

GateResult apply_phase_correction(const GateResult& r, double phi) {
  GateResult out = r;
  const Complex z = std::exp(Complex(0, -phi));
  Eigen::Matrix4cd corr = Eigen::Matrix4cd::Identity();
  corr(1, 1) = z;
  corr(3, 3) = z;
  out.u = r.u * corr;
  out.fidelity = pedersen_fidelity(out.u, ideal_cz());
  out.error = 1.0 - out.fidelity;
  for (int j = 0; j < 4; ++j) {
    out.channels[j].accumulated_phase =
        std::arg(out.u(j, j) * std::conj(ideal_cz()(j, j)));
  }
  return out;
}

}  // namespace darkgate
