#pragma once

#include <string>

#include "darkgate/protocol.hpp"

namespace darkgate {

// Parses an INI-style gate configuration:
//
//   [gate]       btau, alpha, control_ratio, target_shape, control_shape,
//                sigma_over_t, gap_fraction, interaction (exchange|blockade),
//                split_target_pulse, split_phase
//   [couplings]  b_mhz, brr_over_b, bab_over_b, dwrr_over_brr, dwab_over_bab,
//                dw_policy (compensate|explicit), dw_over_b, delta_omega_mhz
//   [prep]       mode (ideal|microwave), mw_pi_time_factor, mw_detuning_ratio
//   [numerics]   tol, samples, jobs
//
// '#' and ';' start comments; keys outside a section, unknown sections,
// unknown keys and malformed values throw ConfigError naming the line.
// Dimensional inputs are converted at this boundary: delta_omega_mhz sets
// an explicit tuned-channel defect dw = delta_omega_mhz / b_mhz (in units
// of b), and conflicts with dw_policy = compensate. The result starts from
// `defaults`, applies the overrides and is validated before returning.
GateConfig parse_config_file(const std::string& path,
                             const GateConfig& defaults = {});

// Same grammar, reading from a string (exposed for tests and tooling).
GateConfig parse_config_text(const std::string& text,
                             const GateConfig& defaults = {});

}  // namespace darkgate
