#include "darkgate/config_file.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace darkgate {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_comment(const std::string& s) {
  const size_t pos = s.find_first_of("#;");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double as_number(const std::string& v, int line, const std::string& key) {
  size_t consumed = 0;
  double x = 0;
  try {
    x = std::stod(v, &consumed);
  } catch (const std::exception&) {
    fail(line, "value '" + v + "' for " + key + " is not a number");
  }
  if (consumed != v.size())
    fail(line, "value '" + v + "' for " + key + " is not a number");
  return x;
}

int as_int(const std::string& v, int line, const std::string& key) {
  const double x = as_number(v, line, key);
  const int i = static_cast<int>(x);
  if (double(i) != x)
    fail(line, "value '" + v + "' for " + key + " is not an integer");
  return i;
}

bool as_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  fail(line, "value '" + v + "' for " + key + " is not a boolean");
}

}  // namespace

GateConfig parse_config_text(const std::string& text,
                             const GateConfig& defaults) {
  GateConfig cfg = defaults;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  bool dw_policy_set = false;
  std::optional<double> delta_omega_mhz;

  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "gate" && section != "couplings" && section != "prep" &&
          section != "numerics")
        fail(line, "unknown section [" + section + "]");
      continue;
    }

    const size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line, "expected 'key = value'");
    if (section.empty()) fail(line, "key '" + key + "' outside any section");

    if (section == "gate") {
      if (key == "btau")
        cfg.btau = as_number(value, line, key);
      else if (key == "alpha")
        cfg.alpha = as_number(value, line, key);
      else if (key == "control_ratio")
        cfg.control_ratio = as_number(value, line, key);
      else if (key == "target_shape")
        cfg.target_shape = parse_pulse_shape(value);
      else if (key == "control_shape")
        cfg.control_shape = parse_pulse_shape(value);
      else if (key == "sigma_over_t")
        cfg.sigma_over_t = as_number(value, line, key);
      else if (key == "gap_fraction")
        cfg.gap_fraction = as_number(value, line, key);
      else if (key == "interaction") {
        if (value == "exchange")
          cfg.interaction = InteractionMode::exchange;
        else if (value == "blockade")
          cfg.interaction = InteractionMode::blockade;
        else
          fail(line, "interaction must be 'exchange' or 'blockade'");
      } else if (key == "split_target_pulse")
        cfg.split_target_pulse = as_bool(value, line, key);
      else if (key == "split_phase")
        cfg.split_phase = as_number(value, line, key);
      else
        fail(line, "unknown key '" + key + "' in [gate]");
    } else if (section == "couplings") {
      if (key == "b_mhz")
        cfg.b_mhz = as_number(value, line, key);
      else if (key == "brr_over_b")
        cfg.brr_over_b = as_number(value, line, key);
      else if (key == "bab_over_b")
        cfg.bab_over_b = as_number(value, line, key);
      else if (key == "dwrr_over_brr")
        cfg.dwrr_over_brr = as_number(value, line, key);
      else if (key == "dwab_over_bab")
        cfg.dwab_over_bab = as_number(value, line, key);
      else if (key == "dw_policy") {
        dw_policy_set = true;
        if (value == "compensate")
          cfg.dw_policy = DefectPolicy::compensate;
        else if (value == "explicit")
          cfg.dw_policy = DefectPolicy::explicit_value;
        else
          fail(line, "dw_policy must be 'compensate' or 'explicit'");
      } else if (key == "dw_over_b")
        cfg.dw_over_b = as_number(value, line, key);
      else if (key == "delta_omega_mhz")
        delta_omega_mhz = as_number(value, line, key);
      else
        fail(line, "unknown key '" + key + "' in [couplings]");
    } else if (section == "prep") {
      if (key == "mode") {
        if (value == "ideal")
          cfg.prep = PrepMode::ideal;
        else if (value == "microwave")
          cfg.prep = PrepMode::microwave;
        else
          fail(line, "prep mode must be 'ideal' or 'microwave'");
      } else if (key == "mw_pi_time_factor")
        cfg.mw_pi_time_factor = as_number(value, line, key);
      else if (key == "mw_detuning_ratio")
        cfg.mw_detuning_ratio = as_number(value, line, key);
      else
        fail(line, "unknown key '" + key + "' in [prep]");
    } else {  // numerics
      if (key == "tol")
        cfg.tol = as_number(value, line, key);
      else if (key == "samples")
        cfg.samples = as_int(value, line, key);
      else if (key == "jobs")
        cfg.jobs = as_int(value, line, key);
      else
        fail(line, "unknown key '" + key + "' in [numerics]");
    }
  }

  if (delta_omega_mhz) {
    if (dw_policy_set && cfg.dw_policy == DefectPolicy::compensate)
      throw ConfigError(
          "config: delta_omega_mhz conflicts with dw_policy = compensate");
    if (!(cfg.b_mhz > 0))
      throw ConfigError("config: delta_omega_mhz requires b_mhz > 0");
    cfg.dw_policy = DefectPolicy::explicit_value;
    cfg.dw_over_b = *delta_omega_mhz / cfg.b_mhz;
  }

  cfg.validate();
  return cfg;
}

GateConfig parse_config_file(const std::string& path,
                             const GateConfig& defaults) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), defaults);
}

}  // namespace darkgate
