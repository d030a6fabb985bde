#pragma once

#include <string>
#include <vector>

#include "darkgate/hamiltonians.hpp"
#include "darkgate/pulses.hpp"

namespace darkgate {

// One Stark-tuned Rydberg pair-state case: the resonant exchange pair,
// its dominant forward/backward leakage channels, and reference numbers.
// All entries mirror the versioned data file; nothing here is hardcoded
// physics. Interaction strengths are ratios to the exchange coupling b;
// defects are ordinary frequencies in MHz.
struct ForsterCase {
  int index = 0;

  std::string r_control, r_target;  // resonant pair |rr>
  std::string a_control, b_target;  // resonant pair |ab>
  double c3_ghz_um3 = 0;
  double btau_300k = 0;
  double btau_4k = 0;
  double stark_field_v_per_m = 0;

  std::string a_prime_control, b_prime_target;  // forward leakage pair
  std::string b_prime_control, a_prime_target;  // backward leakage pair
  double brr_over_b = 0;
  double dwrr_mhz = 0;  // tabulated forward defect
  double bab_over_b = 0;
  double dwab_mhz = 0;  // tabulated backward defect

  // Values the study actually uses (equal to the tabulated ones unless
  // the data file overrides them; sim_note then explains the override).
  double sim_dwrr_mhz = 0;
  double sim_dwab_mhz = 0;
  std::string sim_note;

  double missing_population = 0;  // quoted reference 1 - P_|r1>(T)
};

// Drive parameters of the leakage study, in laboratory units.
struct StudyParams {
  double b_mhz = 0;        // exchange coupling / 2 pi
  double alpha = 0;        // reported ratio omega_t0 / b
  double t_ns = 0;         // pulse duration
  double sigma_over_t = 0;
  double theta_over_2pi = 0;
  PulseShape pulse_shape = PulseShape::shifted_gaussian;
};

struct CaseTable {
  int format_version = 0;
  std::string description;
  StudyParams study;
  std::vector<ForsterCase> cases;

  // Throws ConfigError if no case carries that index.
  const ForsterCase& by_index(int index) const;
};

// Parses and validates the JSON case table; throws ConfigError naming the
// offending field on any missing/invalid entry.
CaseTable load_case_table(const std::string& path);

// Couplings of one case in internal units (b = 1): ratios pass through,
// MHz defects divide by b_mhz. dw = 0: the study runs the bare chain
// without a compensating tuned-channel defect.
CouplingSet study_couplings(const CaseTable& table, const ForsterCase& c);

// The study drive pulse in internal units (time unit 1/b).
PulseEnvelope study_pulse(const CaseTable& table);

}  // namespace darkgate
