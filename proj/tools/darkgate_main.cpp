// darkgate: command-line front end for the adiabatic dark-state two-qubit
// gate simulator. Subcommands: gate, sweep, leakage, blockade.
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "darkgate/analysis.hpp"
#include "darkgate/cases.hpp"
#include "darkgate/config_file.hpp"
#include "darkgate/propagator.hpp"
#include "darkgate/protocol.hpp"
#include "darkgate/reporting.hpp"

namespace fs = std::filesystem;
using namespace darkgate;

#ifndef DARKGATE_DATA_DIR
#define DARKGATE_DATA_DIR "data"
#endif

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  double tol = 0;  // 0 = keep the config value
  int jobs = 0;    // 0 = keep the config value
};

void add_common(CLI::App* cmd, CommonOpts* o, bool with_config = true) {
  if (with_config)
    cmd->add_option("--config", o->config_path,
                    "configuration file (key = value, sections)");
  cmd->add_option("--out", o->out_dir,
                  "output directory (created if missing); all files go here");
  cmd->add_option("--tol", o->tol, "integrator tolerance override");
  cmd->add_option("--jobs", o->jobs, "parallel jobs override");
}

GateConfig resolve_config(const CommonOpts& o) {
  GateConfig cfg;
  if (!o.config_path.empty()) cfg = parse_config_file(o.config_path);
  if (o.tol > 0) cfg.tol = o.tol;
  if (o.jobs > 0) cfg.jobs = o.jobs;
  cfg.validate();
  return cfg;
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + dir +
                      "': " + ec.message());
  return p;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void print_warnings(const GateConfig& cfg) {
  for (const auto& w : cfg.couplings().dispersive_warnings())
    std::cerr << "warning: " << w << "\n";
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------- gate ----

int cmd_gate(const CommonOpts& o, double btau_override,
             const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  GateConfig cfg = resolve_config(o);
  if (btau_override > 0) {
    cfg.btau = btau_override;
    cfg.validate();
  }
  print_warnings(cfg);
  const fs::path out = prepare_out_dir(o.out_dir);

  const GateResult r = run_gate(cfg);
  const std::string report = gate_report_text(cfg, r);
  std::cout << report;

  const fs::path report_path = out / "gate_report.txt";
  std::ofstream f(report_path);
  if (!f) throw ConfigError("cannot write '" + report_path.string() + "'");
  f << report;
  f.close();

  RunManifest m;
  m.command = command;
  m.outputs = {report_path.filename().string()};
  m.config_json = config_snapshot_json(cfg);
  m.wall_seconds = wall_since(t0);
  write_manifest(m, (out / "manifest.json").string());
  return 0;
}

// --------------------------------------------------------------- sweep ----

int cmd_sweep(const CommonOpts& o, const std::vector<double>& grid_arg,
              const std::vector<std::string>& shapes_arg,
              const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  GateConfig cfg = resolve_config(o);
  print_warnings(cfg);
  const fs::path out = prepare_out_dir(o.out_dir);

  const std::vector<double> grid =
      grid_arg.empty() ? default_btau_grid() : grid_arg;
  std::vector<PulseShape> shapes;
  if (shapes_arg.empty()) {
    shapes = {PulseShape::shifted_gaussian, PulseShape::square};
  } else {
    for (const auto& s : shapes_arg) shapes.push_back(parse_pulse_shape(s));
  }

  const auto rows = sweep_btau(cfg, grid, shapes, cfg.jobs);
  const fs::path csv_path = out / "sweep.csv";
  write_sweep_csv(rows, csv_path.string());

  std::cout << "wrote " << rows.size() << " rows to " << csv_path.string()
            << "\n";
  for (const auto& r : rows) {
    std::cout << "  btau " << format_sci(r.btau) << "  " << to_string(r.shape)
              << "  E_sim " << format_sci(r.e_sim) << "  E_solid "
              << format_sci(r.e_solid) << "\n";
    if (!r.notes.empty()) std::cout << "    note: " << r.notes << "\n";
  }

  RunManifest m;
  m.command = command;
  m.outputs = {csv_path.filename().string()};
  m.config_json = config_snapshot_json(cfg);
  m.wall_seconds = wall_since(t0);
  write_manifest(m, (out / "manifest.json").string());
  return 0;
}

// ------------------------------------------------------------- leakage ----

int cmd_leakage(const CommonOpts& o, const std::string& data_path,
                const std::string& params_path, int case_index, bool all,
                const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  const int selectors = (case_index > 0) + all + !params_path.empty();
  if (selectors != 1)
    throw ConfigError(
        "leakage: exactly one of --case N, --all, --params FILE is required");

  const std::string table_path =
      !params_path.empty() ? params_path : data_path;
  const CaseTable table = load_case_table(table_path);
  const fs::path out = prepare_out_dir(o.out_dir);
  const double tol = o.tol > 0 ? o.tol : 1e-11;

  std::vector<const ForsterCase*> selected;
  if (case_index > 0) {
    selected.push_back(&table.by_index(case_index));
  } else {
    for (const auto& c : table.cases) selected.push_back(&c);
  }

  const PulseEnvelope pulse = study_pulse(table);
  std::ostringstream os;
  os << "five-channel leakage study (darkgate " << kVersion << ")\n";
  os << "drive: b/2pi = " << table.study.b_mhz
     << " MHz, duration = " << table.study.t_ns
     << " ns, sigma/T = " << table.study.sigma_over_t
     << ", area = " << table.study.theta_over_2pi << " x 2pi, shape = "
     << to_string(table.study.pulse_shape) << "\n\n";
  os << "case  brr/b    dwrr/b      bab/b    dwab/b      missing         "
        "reference\n";
  for (const ForsterCase* c : selected) {
    const CouplingSet cs = study_couplings(table, *c);
    for (const auto& w : cs.dispersive_warnings())
      std::cerr << "warning: case " << c->index << ": " << w << "\n";
    const double missing = leakage_study(cs, pulse, tol);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%-5d %+.2f    %+.5f    %+.2f    %+.5f    %.8e  %.1e\n",
                  c->index, cs.b_rr, cs.dw_rr, cs.b_ab, cs.dw_ab, missing,
                  c->missing_population);
    os << buf;
    if (!c->sim_note.empty())
      os << "      note: " << c->sim_note << "\n";
  }
  const std::string report = os.str();
  std::cout << report;

  const fs::path report_path = out / "leakage_report.txt";
  std::ofstream f(report_path);
  if (!f) throw ConfigError("cannot write '" + report_path.string() + "'");
  f << report;
  f.close();

  RunManifest m;
  m.command = command;
  m.outputs = {report_path.filename().string()};
  m.wall_seconds = wall_since(t0);
  write_manifest(m, (out / "manifest.json").string());
  return 0;
}

// ------------------------------------------------------------ blockade ----

int cmd_blockade(const CommonOpts& o, const std::string& mode,
                 const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  GateConfig cfg = resolve_config(o);
  const fs::path out = prepare_out_dir(o.out_dir);

  const double b_sh = 1.0;
  std::ostringstream os;
  os << "blockade-gate step (ii) report (darkgate " << kVersion << ")\n";
  os << "mode: " << mode << ", b_sh = 1 (internal units)\n\n";

  PulseEnvelope pulse;
  if (mode == "square") {
    const double omega = cfg.alpha * b_sh;
    pulse = make_square(2.0 * kPi / omega, 2.0 * kPi);
  } else if (mode == "magic") {
    const double omega = magic_rabi(b_sh, 1);
    pulse = make_square(2.0 * kPi / omega, 2.0 * kPi);
  } else if (mode == "adiabatic") {
    const double t_t = cfg.t_target() * b_sh;
    pulse = make_shifted_gaussian(t_t, cfg.sigma_over_t * t_t, 2.0 * kPi);
  } else {
    throw ConfigError("blockade: --mode must be adiabatic, square or magic");
  }

  const double peak = pulse.peak();
  const double wbar = std::sqrt(b_sh * b_sh + peak * peak);
  os << "drive: peak omega_t = " << format_sci(peak)
     << ", duration = " << format_sci(pulse.duration) << "\n";
  os << "dressed eigenvalues at peak: lambda- = "
     << format_sci(0.5 * (b_sh - wbar))
     << ", lambda+ = " << format_sci(0.5 * (b_sh + wbar)) << "\n\n";

  // Propagate {|r1>, |rr>} from |r1> through the pulse.
  const Matrix static2 = build_h2_blockade(0.0, b_sh).entries();
  HamiltonianFn h = [&static2, &pulse](double t, Matrix& hm) {
    hm = static2;
    const double half = 0.5 * pulse.value(t);
    hm(1, 0) += half;
    hm(0, 1) += half;
  };
  StateVector psi0 = StateVector::Zero(2);
  psi0(0) = 1;
  PropagationOptions opts;
  opts.tol = o.tol > 0 ? o.tol : 1e-12;
  opts.samples = 2000;
  const double feature =
      pulse.sigma > 0 ? std::min(pulse.duration, pulse.sigma) : pulse.duration;
  opts.max_step = feature / 20.0;
  const PropagationResult pr = propagate(h, psi0, 0.0, pulse.duration, opts);

  const Complex c1 = pr.final_state(0);
  const Complex cr = pr.final_state(1);
  const double phase = std::fmod(-std::arg(c1) + 4.0 * kPi, 2.0 * kPi);

  double mean_ry = 0;  // time-averaged |c_rr|^2
  for (size_t i = 1; i < pr.times.size(); ++i)
    mean_ry += 0.5 * (pr.populations(i, 1) + pr.populations(i - 1, 1)) *
               (pr.times[i] - pr.times[i - 1]);
  mean_ry /= pulse.duration;

  os << "final |c_r1|^2 = " << format_sci(std::norm(c1))
     << ", residual |c_rr|^2 = " << format_sci(std::norm(cr)) << "\n";
  os << "time-averaged |c_rr|^2 = " << format_sci(mean_ry)
     << "  (small-omega estimate omega^2 / 2 b_sh^2 = "
     << format_sci(peak * peak / (2.0 * b_sh * b_sh)) << ")\n";
  os << "accumulated phase of |r1> (mod 2 pi) = " << format_sci(phase) << "\n";

  if (mode == "magic") {
    const double target = std::fmod(std::sqrt(3.0) * kPi, 2.0 * kPi);
    os << "closed-form magic phase sqrt(3) pi (mod 2 pi) = "
       << format_sci(target)
       << ", deviation = " << format_sci(std::fabs(phase - target)) << "\n";
    const BlockadeAmplitudes exact =
        blockade_square_solution(pulse.value(0.5 * pulse.duration), b_sh,
                                 pulse.duration);
    os << "closed-form residual |c_rr|^2 = " << format_sci(std::norm(exact.cr))
       << "\n";
  }
  if (mode == "adiabatic") {
    const double quad =
        std::fmod(adiabatic_phase(pulse, b_sh) + 4.0 * kPi, 2.0 * kPi);
    os << "adiabatic quadrature phase (mod 2 pi) = " << format_sci(quad)
       << ", relative deviation = "
       << format_sci(std::fabs(phase - quad) / quad) << "\n";
  }

  os << "\nper-input error budget (decay gamma = 1/btau, omega = peak):\n";
  os << "  input  decay            rotation         phase\n";
  const auto rows = blockade_error_rows(cfg.gamma(), b_sh, peak,
                                        pulse.shape == PulseShape::square);
  for (const auto& row : rows) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "  %-5s  %.8e  %.8e  %.8e\n",
                  row.input.c_str(), row.decay, row.rotation, row.phase);
    os << buf;
  }

  const std::string report = os.str();
  std::cout << report;

  const fs::path report_path = out / "blockade_report.txt";
  std::ofstream f(report_path);
  if (!f) throw ConfigError("cannot write '" + report_path.string() + "'");
  f << report;
  f.close();

  RunManifest m;
  m.command = command;
  m.outputs = {report_path.filename().string()};
  m.config_json = config_snapshot_json(cfg);
  m.wall_seconds = wall_since(t0);
  write_manifest(m, (out / "manifest.json").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "darkgate: adiabatic dark-state Rydberg two-qubit gate simulator"};
  app.require_subcommand(1);
  const std::string command = join_args(argc, argv);

  CommonOpts gate_opts, sweep_opts, leak_opts, block_opts;
  double gate_btau = 0;
  std::vector<double> sweep_grid;
  std::vector<std::string> sweep_shapes;
  std::string leak_data = std::string(DARKGATE_DATA_DIR) + "/forster_cases.json";
  std::string leak_params;
  int leak_case = 0;
  bool leak_all = false;
  std::string block_mode;

  CLI::App* gate = app.add_subcommand(
      "gate", "run the full protocol once and report the gate matrix");
  add_common(gate, &gate_opts);
  gate->add_option("--btau", gate_btau, "interaction-time product override");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "error scaling versus btau, written as CSV");
  add_common(sweep, &sweep_opts);
  sweep->add_option("--grid", sweep_grid, "btau values (default: 13 points, 1e3..1e7)")
      ->delimiter(',');
  sweep->add_option("--shapes", sweep_shapes,
                    "target pulse shapes (default: gaussian,square)")
      ->delimiter(',');

  CLI::App* leakage = app.add_subcommand(
      "leakage", "five-channel leakage study on the shipped case table");
  add_common(leakage, &leak_opts, /*with_config=*/false);
  leakage->add_option("--data", leak_data, "case table JSON path");
  leakage->add_option("--case", leak_case, "run a single case by index");
  leakage->add_flag("--all", leak_all, "run every case in the table");
  leakage->add_option("--params", leak_params,
                      "run every case from a user-provided table JSON");

  CLI::App* blockade = app.add_subcommand(
      "blockade", "two-level blockade comparison: step (ii) diagnostics");
  add_common(blockade, &block_opts);
  blockade->add_option("--mode", block_mode, "adiabatic | square | magic")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gate->parsed()) return cmd_gate(gate_opts, gate_btau, command);
    if (sweep->parsed())
      return cmd_sweep(sweep_opts, sweep_grid, sweep_shapes, command);
    if (leakage->parsed())
      return cmd_leakage(leak_opts, leak_data, leak_params, leak_case,
                         leak_all, command);
    if (blockade->parsed()) return cmd_blockade(block_opts, block_mode, command);
  } catch (const NumericsError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
