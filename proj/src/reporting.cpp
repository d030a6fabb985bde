#include "darkgate/reporting.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace darkgate {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

void write_sweep_csv(const std::vector<SweepRecord>& rows,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write CSV file '" + path + "'");
  out << "btau,shape,E_sim,E_analytic_solid,E_analytic_dashed,F,"
         "residual_rydberg\n";
  for (const auto& r : rows) {
    out << format_sci(r.btau) << ',' << to_string(r.shape) << ','
        << format_sci(r.e_sim) << ',' << format_sci(r.e_solid) << ','
        << format_sci(r.e_dashed) << ',' << format_sci(r.fidelity) << ','
        << format_sci(r.residual_rydberg) << '\n';
  }
  if (!out.flush()) throw ConfigError("failed writing CSV file '" + path + "'");
}

std::string config_snapshot_json(const GateConfig& cfg) {
  nlohmann::ordered_json j;
  j["btau"] = cfg.btau;
  j["alpha"] = cfg.alpha;
  j["control_ratio"] = cfg.control_ratio;
  j["target_shape"] = to_string(cfg.target_shape);
  j["control_shape"] = to_string(cfg.control_shape);
  j["sigma_over_t"] = cfg.sigma_over_t;
  j["gap_fraction"] = cfg.gap_fraction;
  j["interaction"] =
      cfg.interaction == InteractionMode::exchange ? "exchange" : "blockade";
  j["brr_over_b"] = cfg.brr_over_b;
  j["bab_over_b"] = cfg.bab_over_b;
  j["dwrr_over_brr"] = cfg.dwrr_over_brr;
  j["dwab_over_bab"] = cfg.dwab_over_bab;
  j["dw_policy"] =
      cfg.dw_policy == DefectPolicy::compensate ? "compensate" : "explicit";
  j["dw_over_b"] = cfg.dw_over_b;
  j["split_target_pulse"] = cfg.split_target_pulse;
  j["split_phase"] = cfg.split_phase;
  j["prep"] = cfg.prep == PrepMode::ideal ? "ideal" : "microwave";
  j["mw_pi_time_factor"] = cfg.mw_pi_time_factor;
  j["mw_detuning_ratio"] = cfg.mw_detuning_ratio;
  j["tol"] = cfg.tol;
  j["samples"] = cfg.samples;
  j["jobs"] = cfg.jobs;
  j["b_mhz"] = cfg.b_mhz;

  const CouplingSet cs = cfg.couplings();
  nlohmann::ordered_json d;
  d["omega_t0"] = cfg.omega_t0();
  d["t_target"] = cfg.t_target();
  d["gamma"] = cfg.gamma();
  d["b"] = cs.b;
  d["b_rr"] = cs.b_rr;
  d["b_ab"] = cs.b_ab;
  d["dw"] = cs.dw;
  d["dw_rr"] = cs.dw_rr;
  d["dw_ab"] = cs.dw_ab;
  d["b_sh"] = cs.b_sh;
  j["derived"] = d;
  return j.dump(2);
}

void write_manifest(const RunManifest& m, const std::string& path) {
  nlohmann::ordered_json j;
  j["tool"] = "darkgate";
  j["version"] = m.version;
  j["command"] = m.command;
  j["wall_seconds"] = m.wall_seconds;
  j["outputs"] = m.outputs;
  if (!m.config_json.empty())
    j["config"] = nlohmann::ordered_json::parse(m.config_json);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write manifest '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out.flush())
    throw ConfigError("failed writing manifest '" + path + "'");
}

std::string gate_report_text(const GateConfig& cfg, const GateResult& r) {
  std::ostringstream os;
  os << "two-qubit gate report (darkgate " << kVersion << ")\n\n";
  os << "config:\n";
  os << "  btau = " << format_sci(cfg.btau) << "   alpha = " << cfg.alpha
     << "   interaction = "
     << (cfg.interaction == InteractionMode::exchange ? "exchange"
                                                      : "blockade")
     << "\n";
  os << "  target shape = " << to_string(cfg.target_shape)
     << "   control shape = " << to_string(cfg.control_shape)
     << "   prep = " << (cfg.prep == PrepMode::ideal ? "ideal" : "microwave")
     << "\n";
  os << "  tol = " << format_sci(cfg.tol) << "   samples = " << cfg.samples
     << "\n\n";

  auto block = [&os](const char* name, auto accessor) {
    os << name << "\n";
    for (int i = 0; i < 4; ++i) {
      os << " ";
      for (int k = 0; k < 4; ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %12.8f", accessor(i, k));
        os << buf;
      }
      os << "\n";
    }
  };
  block("U (real part):",
        [&r](int i, int k) { return r.u(i, k).real(); });
  block("U (imag part):",
        [&r](int i, int k) { return r.u(i, k).imag(); });

  os << "\nF = " << format_sci(r.fidelity) << "\n";
  os << "E = 1 - F = " << format_sci(r.error) << "\n\n";

  os << "per-input diagnostics:\n";
  os << "  input   norm^2          residual_rydberg  phase_vs_ideal   "
        "rydberg_integral\n";
  static const char* labels[4] = {"00", "01", "10", "11"};
  for (int i = 0; i < 4; ++i) {
    const auto& ch = r.channels[i];
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-6s  %-14.8e  %-16.8e  %+-15.8e  %.8e\n",
                  labels[i], ch.final_norm2, ch.residual_rydberg,
                  ch.accumulated_phase, ch.rydberg_integral);
    os << buf;
  }
  return os.str();
}

}  // namespace darkgate
