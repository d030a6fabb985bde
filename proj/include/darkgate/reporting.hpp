#pragma once

#include <string>
#include <vector>

#include "darkgate/analysis.hpp"
#include "darkgate/protocol.hpp"

namespace darkgate {

// Scientific notation with 9 significant digits — the only float
// formatting used in machine outputs, so identical runs produce
// byte-identical files.
std::string format_sci(double v);

// Sweep CSV with the fixed header
//   btau,shape,E_sim,E_analytic_solid,E_analytic_dashed,F,residual_rydberg
// one row per record, all numbers through format_sci.
void write_sweep_csv(const std::vector<SweepRecord>& rows,
                     const std::string& path);

// Resolved parameter snapshot (every config field plus the derived
// couplings), serialized as JSON.
std::string config_snapshot_json(const GateConfig& cfg);

// Reproducibility sidecar written next to every machine output.
struct RunManifest {
  std::string command;             // reconstructed invocation
  std::string version = kVersion;  // tool version
  double wall_seconds = 0;
  std::vector<std::string> outputs;  // files produced by the run
  std::string config_json;           // from config_snapshot_json
};

void write_manifest(const RunManifest& m, const std::string& path);

// Human-readable gate report: config summary, the 4x4 gate matrix as
// real/imaginary blocks, fidelity, error and per-input diagnostics.
std::string gate_report_text(const GateConfig& cfg, const GateResult& r);

}  // namespace darkgate
