// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned in the assertions below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "darkgate/analysis.hpp"
#include "darkgate/cases.hpp"
#include "darkgate/propagator.hpp"
#include "darkgate/protocol.hpp"

using namespace darkgate;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// 1. Smooth-pulse error scaling: E within x1.5 of eta/btau at three
//    lifetimes; F >= 0.9999 at btau = 1e6; well under 30 s per point.
void criterion_1() {
  GateConfig cfg;  // defaults: alpha 0.10472, ratios B/2, defects 3x, comp.
  const double eta = analytic_error(1.0, 1.0, cfg.alpha).eta;
  double worst_ratio = 1.0, f_1e6 = 0.0, worst_seconds = 0.0;
  for (double btau : {1e4, 1e5, 1e6}) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.btau = btau;
    const GateResult r = run_gate(cfg);
    worst_seconds = std::max(worst_seconds, seconds_since(t0));
    const double ratio = r.error / (eta / btau);
    if (std::abs(std::log(ratio)) > std::abs(std::log(worst_ratio)))
      worst_ratio = ratio;
    if (btau == 1e6) f_1e6 = r.fidelity;
  }
  const bool pass = worst_ratio <= 1.5 && worst_ratio >= 1.0 / 1.5 &&
                    f_1e6 >= 0.9999 && worst_seconds < 30.0;
  report(1, pass,
         "smooth-pulse decay scaling: worst E/(eta/btau) = " +
             sci(worst_ratio) + " (bound x1.5), F(btau=1e6) = " +
             std::to_string(f_1e6) + " (>= 0.9999), slowest point " +
             sci(worst_seconds) + " s (< 30 s)");
}

// 2. Square-pulse plateau at btau = 1e7: nearness to alpha^2/16 and
//    separation from the smooth-pulse error.
void criterion_2() {
  GateConfig cfg;
  cfg.btau = 1e7;
  cfg.target_shape = cfg.control_shape = PulseShape::square;
  const GateResult square = run_gate(cfg);
  cfg.target_shape = cfg.control_shape = PulseShape::shifted_gaussian;
  const GateResult smooth = run_gate(cfg);

  const double plateau = cfg.alpha * cfg.alpha / 16.0;
  const double ratio = square.error / plateau;
  const double separation = square.error / smooth.error;
  const bool near = ratio <= 1.5 && ratio >= 1.0 / 1.5;
  const bool split = separation >= 10.0;
  report(2, near && split,
         "square-pulse plateau: E = " + sci(square.error) + " vs alpha^2/16 = " +
             sci(plateau) + ", ratio " + sci(ratio) +
             " (bound x1.5; simulated plateau sits at ~1.9x the reference, "
             "see README known deviations), smooth-pulse separation x" +
             sci(separation) + " (>= x10)");
}

// 3. Leakage-channel missing populations within a factor of 2 of the
//    five quoted references, in under 5 s.
void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const CaseTable table =
      load_case_table(std::string(DARKGATE_DATA_DIR) + "/forster_cases.json");
  const PulseEnvelope pulse = study_pulse(table);
  double worst_ratio = 1.0;
  std::string detail;
  for (const ForsterCase& c : table.cases) {
    const double missing = leakage_study(study_couplings(table, c), pulse);
    const double ratio = missing / c.missing_population;
    if (std::abs(std::log(ratio)) > std::abs(std::log(worst_ratio)))
      worst_ratio = ratio;
    detail += (detail.empty() ? "" : ", ") + std::to_string(c.index) + ": " +
              sci(ratio) + "x";
  }
  const double elapsed = seconds_since(t0);
  const bool pass =
      worst_ratio <= 2.0 && worst_ratio >= 0.5 && elapsed < 5.0;
  report(3, pass,
         "leakage case study ratios to reference {" + detail + "} (factor-2 "
         "band), total " + sci(elapsed) + " s (< 5 s)");
}

// 4. Dark-state structure across 100 random parameter draws.
void criterion_4() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> b_dist(0.5, 5.0);
  std::uniform_real_distribution<double> u_dist(0.05, 0.95);
  double worst_lambda = 0, worst_mid = 0, worst_pm = 0;
  for (int i = 0; i < 100; ++i) {
    const double b = b_dist(rng);
    const double w = u_dist(rng) * b;
    EigenSystem es = eig_hermitian(build_h3(w, b));
    const double nu = std::sqrt(b * b + 0.25 * w * w);
    worst_lambda = std::max(worst_lambda, std::abs(es.values(1)) / b);
    worst_mid = std::max(worst_mid, std::abs(es.vectors.col(1)(1)));
    worst_pm = std::max(worst_pm, std::abs(es.values(2) - nu) / nu);
    worst_pm = std::max(worst_pm, std::abs(es.values(0) + nu) / nu);
  }
  const bool pass =
      worst_lambda <= 1e-10 && worst_mid <= 1e-10 && worst_pm <= 1e-10;
  report(4, pass,
         "dark-state structure over 100 draws: max |lambda0|/b = " +
             sci(worst_lambda) + ", max mid-state amplitude = " +
             sci(worst_mid) + ", max eigenvalue deviation = " + sci(worst_pm) +
             " (all <= 1e-10)");
}

// 5. Two-level blockade propagation against the closed form, plus the
//    magic-amplitude return and conditional phase.
void criterion_5() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> omega_dist(0.05, 2.0);
  std::uniform_real_distribution<double> shift_dist(-3.0, 3.0);
  double max_dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double omega = omega_dist(rng);
    const double b_sh = shift_dist(rng);
    const double t_end = 2.0 * kPi / omega;
    const Matrix h = build_h2_blockade(omega, b_sh).entries();
    StateVector psi(2);
    psi << 1.0, 0.0;
    PropagationOptions opts;
    opts.tol = 1e-12;
    opts.samples = 40;
    opts.record_states = true;
    PropagationResult r = propagate(
        [&h](double, Matrix& out) { out = h; }, psi, 0.0, t_end, opts);
    for (size_t k = 0; k < r.times.size(); ++k) {
      const BlockadeAmplitudes ref =
          blockade_square_solution(omega, b_sh, r.times[k]);
      max_dev = std::max(max_dev, std::abs(r.states[k](0) - ref.c1));
      max_dev = std::max(max_dev, std::abs(r.states[k](1) - ref.cr));
    }
  }

  const double omega = magic_rabi(1.0, 1);
  const double t_end = 2.0 * kPi / omega;
  const Matrix h = build_h2_blockade(omega, 1.0).entries();
  StateVector psi(2);
  psi << 1.0, 0.0;
  PropagationOptions opts;
  opts.tol = 1e-12;
  PropagationResult r = propagate(
      [&h](double, Matrix& out) { out = h; }, psi, 0.0, t_end, opts);
  const double leak = std::abs(r.final_state(1));
  const double phase =
      std::fmod(-std::arg(r.final_state(0)) + 4.0 * kPi, 2.0 * kPi);
  const double phase_dev = std::abs(phase - std::sqrt(3.0) * kPi);

  const bool pass = max_dev <= 1e-8 && leak <= 1e-10 && phase_dev <= 1e-6;
  report(5, pass,
         "blockade oracle: max amplitude deviation " + sci(max_dev) +
             " (<= 1e-8) over 20 random sets; magic-amplitude |c_r(T)| = " +
             sci(leak) + " (<= 1e-10), conditional phase deviation " +
             sci(phase_dev) + " rad (<= 1e-6)");
}

// 6. Pulse-shape error coefficients.
void criterion_6() {
  const double omega0 = 0.01;
  const double t_pulse = 2.0 * kPi / omega0;
  const double k_sine = kappa_factor(make_sine(t_pulse, 2.0 * kPi), 1.0);
  const double k_gauss = kappa_factor(
      make_shifted_gaussian(t_pulse, 0.2 * t_pulse, 2.0 * kPi), 1.0);
  const double k_square = kappa_factor(make_square(t_pulse, 2.0 * kPi), 1.0);
  const bool pass = std::abs(k_sine - kPi * kPi / 8.0) <= 1e-3 &&
                    std::abs(k_gauss - 1.52) <= 0.02 &&
                    std::abs(k_square - 1.0) <= 1e-3;
  report(6, pass,
         "pulse-shape coefficients: sine " + sci(k_sine) +
             " (pi^2/8 +- 1e-3), gaussian " + sci(k_gauss) +
             " (1.52 +- 0.02), square " + sci(k_square) + " (1 +- 1e-3)");
}

// 7. Average-fidelity formula.
void criterion_7() {
  const double mismatch =
      pedersen_fidelity(Eigen::Matrix4cd::Identity(), ideal_cz());
  std::mt19937 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst_unit = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = Complex(n(rng), n(rng));
    const Eigen::Matrix4cd q =
        Eigen::HouseholderQR<Eigen::Matrix4cd>(a).householderQ();
    worst_unit = std::max(worst_unit, std::abs(pedersen_fidelity(q, q) - 1.0));
  }
  const bool pass = mismatch == 0.4 && worst_unit <= 1e-12;
  report(7, pass,
         "fidelity formula: F(identity vs phase gate) = " +
             std::to_string(mismatch) + " (= 0.4 exactly), max |F(U,U) - 1| = " +
             sci(worst_unit) + " over 10 random unitaries");
}

// 8. Norm bookkeeping: closed runs conserve, decaying runs lose exactly
//    gamma times the Rydberg time integral.
void criterion_8() {
  const Basis full = Basis::full_two_atom();
  GateConfig closed;
  closed.btau = std::numeric_limits<double>::infinity();
  closed.tol = 1e-11;
  Schedule s = make_gate_schedule(closed);
  double worst_drift = 0.0;
  for (const std::string& label : {"01", "11"}) {
    StateVector psi0 = StateVector::Zero(36);
    psi0[full.index_of_label(label)] = 1.0;
    PropagationOptions opts;
    opts.tol = closed.tol;
    opts.samples = 400;
    PropagationResult r =
        propagate_schedule(s, DecayModel{0.0}, psi0, opts);
    for (double n2 : r.norms)
      worst_drift = std::max(worst_drift, std::abs(n2 - 1.0));
  }

  GateConfig open = closed;
  open.btau = 1e4;
  Schedule s2 = make_gate_schedule(open);
  StateVector psi0 = StateVector::Zero(36);
  psi0[full.index_of_label("11")] = 1.0;
  PropagationOptions opts;
  opts.tol = 1e-11;
  opts.samples = 2000;
  PropagationResult r =
      propagate_schedule(s2, DecayModel{open.gamma()}, psi0, opts);
  const double loss = 1.0 - r.final_state.squaredNorm();
  const double predicted = open.gamma() * rydberg_time_integral(r, full);
  const double rel = std::abs(loss - predicted) / predicted;

  const bool pass = worst_drift <= 1e-9 && rel <= 0.01;
  report(8, pass,
         "norm bookkeeping: closed-run drift " + sci(worst_drift) +
             " (<= 1e-9); decay loss " + sci(loss) + " vs gamma*integral " +
             sci(predicted) + ", relative deviation " + sci(rel) +
             " (<= 1e-2)");
}

// 9. Shifted-Gaussian peak amplitude at the documented working point.
void criterion_9() {
  const double alpha = 0.1;
  const double b_mhz = 350.0;
  const double t_pulse = 2.0 * kPi / alpha;
  const PulseEnvelope g =
      make_shifted_gaussian(t_pulse, 0.2 * t_pulse, 2.0 * kPi);
  const double peak_mhz = g.peak() * b_mhz;  // peak/(2 pi), MHz
  const double factor = g.peak() / (2.0 * kPi / t_pulse);
  const bool pass =
      std::abs(peak_mhz - 74.0) <= 1.0 && std::abs(factor - 2.1) <= 0.042;
  report(9, pass,
         "gaussian peak at alpha = 0.1, b/2pi = 350 MHz: " + sci(peak_mhz) +
             " MHz (74 +- 1), shape factor " + sci(factor) +
             " (2.1 +- 2%)");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d/9 criteria passed\n", 9 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
