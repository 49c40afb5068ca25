#include "spr/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spr/units.hpp"

namespace spr {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

KeyValueFile KeyValueFile::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

KeyValueFile KeyValueFile::from_string(const std::string& text, const std::string& name) {
  KeyValueFile kv;
  kv.name_ = name;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ": expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(name + ": empty key", lineno);
    if (value.empty()) throw ConfigError(name + ": empty value for '" + key + "'", lineno);
    if (kv.entries_.count(key))
      throw ConfigError(name + ": duplicate key '" + key + "'", lineno);
    kv.entries_[key] = Entry{value, lineno, false};
  }
  return kv;
}

const KeyValueFile::Entry* KeyValueFile::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  it->second.used = true;
  return &it->second;
}

const KeyValueFile::Entry& KeyValueFile::require(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ConfigError(name_ + ": missing required key '" + key + "'");
  return *e;
}

bool KeyValueFile::has(const std::string& key) const { return find(key) != nullptr; }

std::string KeyValueFile::get_string(const std::string& key) const {
  return require(key).value;
}

std::string KeyValueFile::get_string_or(const std::string& key, const std::string& def) const {
  const Entry* e = find(key);
  return e ? e->value : def;
}

double KeyValueFile::get_double(const std::string& key) const {
  const Entry& e = require(key);
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0')
    throw ConfigError(name_ + ": '" + key + "' is not a number: " + e.value, e.line);
  return v;
}

double KeyValueFile::get_double_or(const std::string& key, double def) const {
  return entries_.count(key) ? get_double(key) : def;
}

int KeyValueFile::get_int_or(const std::string& key, int def) const {
  if (!entries_.count(key)) return def;
  const double v = get_double(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError(name_ + ": '" + key + "' must be an integer", line_of(key));
  return i;
}

bool KeyValueFile::get_bool_or(const std::string& key, bool def) const {
  const Entry* e = find(key);
  if (!e) return def;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(name_ + ": '" + key + "' is not a boolean: " + e->value, e->line);
}

int KeyValueFile::line_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

std::vector<std::string> KeyValueFile::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_)
    if (!e.used) out.push_back(k);
  return out;
}

void KeyValueFile::assert_all_used() const {
  for (const auto& [k, e] : entries_)
    if (!e.used)
      throw ConfigError(name_ + ": unknown key '" + k + "'", e.line);
}

SystemParams config_system(const KeyValueFile& kv, const std::string& prefix) {
  SystemParams p;
  p.omega_q = ghz_to_rad(kv.get_double(prefix + "omega_q_ghz"));
  p.omega_r = ghz_to_rad(kv.get_double(prefix + "omega_r_ghz"));
  p.g = mhz_to_rad(kv.get_double(prefix + "g_mhz"));
  p.kappa = mhz_to_rad(kv.get_double(prefix + "kappa_mhz"));
  p.eta = kv.get_double_or(prefix + "eta", 1.0);
  p.validate();
  return p;
}

PulseParams config_pulse(const KeyValueFile& kv, const SystemParams& sys,
                         const std::string& prefix) {
  PulseParams pulse;
  pulse.t_ph = us_to_s(kv.get_double(prefix + "t_ph_us"));
  pulse.t0 = us_to_s(kv.get_double_or(prefix + "t0_us", 0.0));
  const std::string carrier = kv.get_string_or(prefix + "omega_ph_ghz", "resonant-up");
  if (carrier == "resonant-up") {
    pulse.omega_ph = resonant_up_carrier(sys);
  } else {
    char* end = nullptr;
    const double v = std::strtod(carrier.c_str(), &end);
    if (end == carrier.c_str() || *end != '\0')
      throw ConfigError(kv.name() + ": 'omega_ph_ghz' must be a number or 'resonant-up', got: " +
                            carrier,
                        kv.line_of(prefix + "omega_ph_ghz"));
    pulse.omega_ph = ghz_to_rad(v);
  }
  pulse.validate();
  return pulse;
}

SolverSettings config_solver(const KeyValueFile& kv) {
  SolverSettings s;
  const std::string backend = kv.get_string_or("solver", "expsum");
  if (backend == "expsum")
    s.backend = SolverSettings::Backend::ExpSum;
  else if (backend == "rk")
    s.backend = SolverSettings::Backend::RK;
  else
    throw ConfigError(kv.name() + ": 'solver' must be 'expsum' or 'rk', got: " + backend,
                      kv.line_of("solver"));
  s.grid_span_scale = kv.get_double_or("grid_span_scale", 1.0);
  s.grid_nodes = kv.get_int_or("grid_nodes", 0);
  s.grid_level = kv.get_int_or("grid_level", 0);
  s.tol = kv.get_double_or("tol", 1e-6);
  s.jobs = kv.get_int_or("jobs", 1);
  s.zero_bs = kv.get_bool_or("zero_bs", false);
  s.purcell_uses_kappa_q = kv.get_bool_or("purcell_uses_kappa_q", false);
  if (s.grid_span_scale <= 0.0)
    throw ConfigError(kv.name() + ": 'grid_span_scale' must be positive");
  if (s.grid_nodes < 0 || s.grid_level < 0 || s.jobs < 0)
    throw ConfigError(kv.name() + ": grid_nodes, grid_level and jobs must be nonnegative");
  return s;
}

RegimeThresholds config_thresholds(const KeyValueFile& kv) {
  RegimeThresholds th;
  th.dispersive = kv.get_double_or("regime_threshold_dispersive", th.dispersive);
  th.bs = kv.get_double_or("regime_threshold_bs", th.bs);
  th.overdamp = kv.get_double_or("regime_threshold_overdamp", th.overdamp);
  return th;
}

double config_t_m(const KeyValueFile& kv, const std::string& prefix) {
  const double t_m = us_to_s(kv.get_double(prefix + "t_m_us"));
  if (!(t_m > 0.0)) throw ConfigError(kv.name() + ": 't_m_us' must be positive");
  return t_m;
}

RunConfig load_run_config(const std::string& path) {
  const KeyValueFile kv = KeyValueFile::from_file(path);
  RunConfig rc;
  rc.sys = config_system(kv);
  rc.pulse = config_pulse(kv, rc.sys);
  rc.t_m = config_t_m(kv);
  rc.solver = config_solver(kv);
  rc.thresholds = config_thresholds(kv);
  rc.strict_regime = kv.get_bool_or("strict", false);
  kv.assert_all_used();
  return rc;
}

}  // namespace spr
