#include "darkgate/cases.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace darkgate {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key,
                    const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ConfigError("case table: missing field '" + key + "' in " + where);
  return *it;
}

double require_number(const json& j, const std::string& key,
                      const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number())
    throw ConfigError("case table: field '" + key + "' in " + where +
                      " must be a number");
  return v.get<double>();
}

std::string require_string(const json& j, const std::string& key,
                           const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string())
    throw ConfigError("case table: field '" + key + "' in " + where +
                      " must be a string");
  return v.get<std::string>();
}

}  // namespace

const ForsterCase& CaseTable::by_index(int index) const {
  for (const auto& c : cases)
    if (c.index == index) return c;
  throw ConfigError("case table: no case with index " +
                    std::to_string(index));
}

CaseTable load_case_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open case table '" + path + "'");

  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("case table '" + path + "': " + e.what());
  }

  CaseTable t;
  const json& version = require(j, "format_version", "top level");
  if (!version.is_number_integer() || version.get<int>() != 1)
    throw ConfigError("case table: unsupported format_version (expected 1)");
  t.format_version = 1;
  t.description = require_string(j, "description", "top level");

  const json& study = require(j, "study", "top level");
  t.study.b_mhz = require_number(study, "b_mhz", "study");
  t.study.alpha = require_number(study, "alpha", "study");
  t.study.t_ns = require_number(study, "t_ns", "study");
  t.study.sigma_over_t = require_number(study, "sigma_over_t", "study");
  t.study.theta_over_2pi = require_number(study, "theta_over_2pi", "study");
  t.study.pulse_shape =
      parse_pulse_shape(require_string(study, "pulse_shape", "study"));
  if (!(t.study.b_mhz > 0))
    throw ConfigError("case table: study.b_mhz must be positive");
  if (!(t.study.t_ns > 0))
    throw ConfigError("case table: study.t_ns must be positive");
  if (!(t.study.theta_over_2pi > 0))
    throw ConfigError("case table: study.theta_over_2pi must be positive");
  if (!(t.study.sigma_over_t > 0 && t.study.sigma_over_t <= 0.5))
    throw ConfigError("case table: study.sigma_over_t must be in (0, 0.5]");

  const json& cases = require(j, "cases", "top level");
  if (!cases.is_array() || cases.empty())
    throw ConfigError("case table: 'cases' must be a non-empty array");

  std::set<int> seen;
  for (const json& cj : cases) {
    ForsterCase c;
    const json& idx = require(cj, "case", "cases[]");
    if (!idx.is_number_integer())
      throw ConfigError("case table: field 'case' must be an integer");
    c.index = idx.get<int>();
    const std::string where = "case " + std::to_string(c.index);
    if (!seen.insert(c.index).second)
      throw ConfigError("case table: duplicate " + where);

    const json& pair = require(cj, "pair_states", where);
    c.r_control = require_string(pair, "r_control", where);
    c.r_target = require_string(pair, "r_target", where);
    c.a_control = require_string(pair, "a_control", where);
    c.b_target = require_string(pair, "b_target", where);
    c.c3_ghz_um3 = require_number(cj, "c3_ghz_um3", where);
    c.btau_300k = require_number(cj, "btau_300k", where);
    c.btau_4k = require_number(cj, "btau_4k", where);
    c.stark_field_v_per_m = require_number(cj, "stark_field_v_per_m", where);

    const json& leak = require(cj, "leakage_states", where);
    c.a_prime_control = require_string(leak, "a_prime_control", where);
    c.b_prime_target = require_string(leak, "b_prime_target", where);
    c.b_prime_control = require_string(leak, "b_prime_control", where);
    c.a_prime_target = require_string(leak, "a_prime_target", where);

    c.brr_over_b = require_number(cj, "brr_over_b", where);
    c.dwrr_mhz = require_number(cj, "dwrr_mhz", where);
    c.bab_over_b = require_number(cj, "bab_over_b", where);
    c.dwab_mhz = require_number(cj, "dwab_mhz", where);
    c.missing_population = require_number(cj, "missing_population", where);

    c.sim_dwrr_mhz = c.dwrr_mhz;
    c.sim_dwab_mhz = c.dwab_mhz;
    if (const auto sim = cj.find("sim"); sim != cj.end()) {
      if (sim->contains("dwrr_mhz"))
        c.sim_dwrr_mhz = require_number(*sim, "dwrr_mhz", where + " sim");
      if (sim->contains("dwab_mhz"))
        c.sim_dwab_mhz = require_number(*sim, "dwab_mhz", where + " sim");
      if (sim->contains("note"))
        c.sim_note = require_string(*sim, "note", where + " sim");
    }

    if (c.dwrr_mhz == 0 || c.sim_dwrr_mhz == 0)
      throw ConfigError("case table: " + where +
                        ": forward defect dwrr_mhz must be nonzero");
    if (c.dwab_mhz == 0 || c.sim_dwab_mhz == 0)
      throw ConfigError("case table: " + where +
                        ": backward defect dwab_mhz must be nonzero");

    t.cases.push_back(std::move(c));
  }
  return t;
}

CouplingSet study_couplings(const CaseTable& table, const ForsterCase& c) {
  CouplingSet cs;
  cs.b = 1.0;
  cs.b_rr = c.brr_over_b;
  cs.b_ab = c.bab_over_b;
  cs.dw = 0.0;
  cs.dw_rr = c.sim_dwrr_mhz / table.study.b_mhz;
  cs.dw_ab = c.sim_dwab_mhz / table.study.b_mhz;
  cs.b_sh = 0.0;
  return cs;
}

PulseEnvelope study_pulse(const CaseTable& table) {
  // b = 2 pi * b_mhz * 1e-3 rad/ns sets the time unit: a lab duration of
  // t_ns nanoseconds is t_ns * b internal time units.
  const double b_rad_per_ns = 2.0 * kPi * table.study.b_mhz * 1e-3;
  const double duration = table.study.t_ns * b_rad_per_ns;
  const double theta = 2.0 * kPi * table.study.theta_over_2pi;
  switch (table.study.pulse_shape) {
    case PulseShape::shifted_gaussian:
      return make_shifted_gaussian(duration, table.study.sigma_over_t * duration,
                                   theta);
    case PulseShape::sine:
      return make_sine(duration, theta);
    case PulseShape::square:
      return make_square(duration, theta);
  }
  throw ConfigError("study_pulse: unknown pulse shape");
}

}  // namespace darkgate
