#include "darkgate/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "darkgate/hamiltonians.hpp"
#include "darkgate/propagator.hpp"
#include "darkgate/pulses.hpp"
#include "darkgate/quantum.hpp"

namespace darkgate {

ErrorBudget analytic_error(double gamma, double b, double omega_t0) {
  if (!(b > 0)) throw ConfigError("analytic_error: b must be positive");
  if (!(omega_t0 > 0))
    throw ConfigError("analytic_error: omega_t0 must be positive");
  if (gamma < 0) throw ConfigError("analytic_error: gamma must be >= 0");

  ErrorBudget e;
  // Input-averaged decay contributions: the control atom spends the full
  // step (ii) in Rydberg for inputs 10 and 11 (2 pi gamma / omega each),
  // the target transfer costs pi gamma / omega for input 01, and the
  // doubly-Rydberg admixture costs pi gamma omega / (4 b^2) for input 11.
  e.decay_control = kPi * gamma / omega_t0;
  e.decay_target = kPi * gamma / (4.0 * omega_t0);
  e.decay_ryry = kPi * gamma * omega_t0 / (16.0 * b * b);
  e.rotation = 0;
  e.phase = 0;
  e.total = e.decay_control + e.decay_target + e.decay_ryry;
  e.eta = 5.0 * kPi * b / (4.0 * omega_t0);
  e.decay_bound = 2.0 * gamma / b;
  return e;
}

std::array<BlockadeErrorRow, 4> blockade_error_rows(double gamma, double b_sh,
                                                    double omega_t,
                                                    bool square_pulse,
                                                    double delta_b) {
  if (!(b_sh > 0))
    throw ConfigError("blockade_error_rows: b_sh must be positive");
  if (!(omega_t > 0))
    throw ConfigError("blockade_error_rows: omega_t must be positive");
  if (gamma < 0)
    throw ConfigError("blockade_error_rows: gamma must be >= 0");

  std::array<BlockadeErrorRow, 4> rows;
  rows[0].input = "00";
  rows[1].input = "01";
  rows[1].decay = kPi * gamma / omega_t;
  rows[2].input = "10";
  rows[2].decay = 2.0 * kPi * gamma / omega_t;
  rows[3].input = "11";
  rows[3].decay =
      2.0 * kPi * gamma / omega_t + kPi * gamma * omega_t / (4.0 * b_sh * b_sh);
  rows[3].rotation =
      square_pulse ? omega_t * omega_t / (2.0 * b_sh * b_sh) : 0.0;
  rows[3].phase = kPi * delta_b * omega_t / (b_sh * b_sh);
  return rows;
}

BlockadeAmplitudes blockade_square_solution(double omega_t, double b_sh,
                                            double t) {
  const double wbar = std::sqrt(omega_t * omega_t + b_sh * b_sh);
  BlockadeAmplitudes a;
  if (wbar == 0) {
    a.c1 = 1;
    a.cr = 0;
    return a;
  }
  const double half = 0.5 * wbar * t;
  const Complex rot = std::exp(Complex(0, -0.5 * b_sh * t));
  a.c1 = rot * Complex(std::cos(half), (b_sh / wbar) * std::sin(half));
  a.cr = rot * Complex(0, -1) * (omega_t / wbar) * std::sin(half);
  return a;
}

double magic_rabi(double b_sh, int k) {
  if (!(b_sh > 0)) throw ConfigError("magic_rabi: b_sh must be positive");
  if (k < 1) throw ConfigError("magic_rabi: k must be >= 1");
  return b_sh / std::sqrt(4.0 * double(k) * double(k) - 1.0);
}

double adiabatic_phase(const PulseEnvelope& pulse, double b_sh) {
  if (!(b_sh > 0)) throw ConfigError("adiabatic_phase: b_sh must be positive");
  if (!(pulse.duration > 0))
    throw ConfigError("adiabatic_phase: pulse duration must be positive");
  auto lower_eigenvalue = [&pulse, b_sh](double t) {
    const double w = pulse.value(t);
    return 0.5 * (b_sh - std::sqrt(b_sh * b_sh + w * w));
  };
  return integrate_adaptive(lower_eigenvalue, 0.0, pulse.duration, 1e-12,
                            1e-18);
}

std::vector<double> default_btau_grid() {
  std::vector<double> g(13);
  for (int i = 0; i < 13; ++i) g[i] = std::pow(10.0, 3.0 + i / 3.0);
  return g;
}

std::vector<SweepRecord> sweep_btau(const GateConfig& base,
                                    const std::vector<double>& grid,
                                    const std::vector<PulseShape>& shapes,
                                    int jobs) {
  if (grid.empty() || shapes.empty()) return {};

  const double eta = 5.0 * kPi / (4.0 * base.alpha);
  const double dashed_offset = base.alpha * base.alpha / 16.0;

  struct Job {
    double btau;
    PulseShape shape;
  };
  std::vector<Job> work;
  work.reserve(grid.size() * shapes.size());
  for (double v : grid)
    for (PulseShape s : shapes) work.push_back({v, s});

  std::vector<SweepRecord> out(work.size());
  std::atomic<size_t> cursor{0};

  // A failed row records the failure in its notes and the sweep goes on.
  auto run_one = [&](size_t i) {
    SweepRecord rec;
    rec.btau = work[i].btau;
    rec.shape = work[i].shape;
    try {
      if (!(work[i].btau > 0)) {
        throw ConfigError("sweep_btau: btau values must be positive");
      }
      rec.e_solid = eta / work[i].btau;
      rec.e_dashed = rec.e_solid + dashed_offset;
      GateConfig cfg = base;
      cfg.btau = work[i].btau;
      cfg.target_shape = work[i].shape;
      cfg.control_shape = work[i].shape;
      cfg.jobs = 1;
      const GateResult r = run_gate(cfg);
      rec.e_sim = r.error;
      rec.fidelity = r.fidelity;
      for (const auto& ch : r.channels)
        rec.residual_rydberg =
            std::max(rec.residual_rydberg, ch.residual_rydberg);
    } catch (const Error& e) {
      rec.e_sim = rec.fidelity = rec.residual_rydberg =
          std::numeric_limits<double>::quiet_NaN();
      rec.notes = e.what();
    }
    out[i] = std::move(rec);
  };

  const int pool =
      std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
  if (pool == 1) {
    for (size_t i = 0; i < work.size(); ++i) run_one(i);
  } else {
    auto worker = [&] {
      for (;;) {
        const size_t i = cursor.fetch_add(1);
        if (i >= work.size()) return;
        run_one(i);
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return out;
}

double leakage_study(const CouplingSet& cs, const PulseEnvelope& pulse,
                     double tol) {
  if (!(pulse.duration > 0))
    throw ConfigError("leakage_study: pulse duration must be positive");

  const Matrix static_part = build_h5(0.0, cs).entries();
  HamiltonianFn h = [&static_part, &pulse](double t, Matrix& out) {
    out = static_part;
    const double half = 0.5 * pulse.value(t);
    out(1, 0) += half;
    out(0, 1) += half;
  };

  StateVector psi0 = StateVector::Zero(5);
  psi0(0) = 1;  // |r1>

  PropagationOptions opts;
  opts.tol = tol;
  opts.samples = 400;
  const double feature =
      pulse.sigma > 0 ? std::min(pulse.duration, pulse.sigma) : pulse.duration;
  opts.max_step = feature / 20.0;

  const PropagationResult r = propagate(h, psi0, 0.0, pulse.duration, opts);
  return 1.0 - survival_probability(r, 0);
}

}  // namespace darkgate
