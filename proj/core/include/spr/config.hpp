#ifndef SPR_CONFIG_HPP
#define SPR_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spr/errors.hpp"
#include "spr/params.hpp"
#include "spr/regime.hpp"

namespace spr {

// Flat "key = value" files: '#' starts a comment, blank lines are skipped,
// keys may be dotted (presets address table rows as "row1.g_mhz"). Every key
// must be consumed by the command that loaded the file; leftovers are
// reported with their line number so typos fail loudly instead of silently
// falling back to defaults.
class KeyValueFile {
 public:
  static KeyValueFile from_file(const std::string& path);
  static KeyValueFile from_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;              // throws if missing
  std::string get_string_or(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double def) const;
  int get_int_or(const std::string& key, int def) const;
  bool get_bool_or(const std::string& key, bool def) const;

  // Keys beginning with "prefix." that have not been read yet.
  std::vector<std::string> unused_keys() const;
  // Throws ConfigError naming the first unconsumed key and its line.
  void assert_all_used() const;

  const std::string& name() const { return name_; }
  int line_of(const std::string& key) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  std::map<std::string, Entry> entries_;
  std::string name_;

  const Entry& require(const std::string& key) const;
  const Entry* find(const std::string& key) const;
};

// Numerical knobs shared by the waveguide solver commands.
struct SolverSettings {
  enum class Backend { ExpSum, RK };
  Backend backend = Backend::ExpSum;
  double grid_span_scale = 1.0;  // widens or narrows the momentum window
  int grid_nodes = 0;            // 0: size from the pulse/linewidth scales
  int grid_level = 0;            // each level doubles nodes and pads the span
  double tol = 1e-6;
  int jobs = 1;
  bool zero_bs = false;                // drop the beam-splitter coupling entirely
  bool purcell_uses_kappa_q = false;
};

// Everything one readout run needs.
struct RunConfig {
  SystemParams sys;
  PulseParams pulse;
  double t_m = 0.0;  // measurement (detector integration) time, seconds
  SolverSettings solver;
  RegimeThresholds thresholds;
  bool strict_regime = false;
};

// Builders shared by the CLI commands. `prefix` addresses preset rows
// ("row2." etc.); pass "" for a plain file. The pulse builder resolves the
// "resonant-up" carrier token against the supplied system.
SystemParams config_system(const KeyValueFile& kv, const std::string& prefix = "");
PulseParams config_pulse(const KeyValueFile& kv, const SystemParams& sys,
                         const std::string& prefix = "");
SolverSettings config_solver(const KeyValueFile& kv);
RegimeThresholds config_thresholds(const KeyValueFile& kv);
double config_t_m(const KeyValueFile& kv, const std::string& prefix = "");  // seconds

RunConfig load_run_config(const std::string& path);

}  // namespace spr

#endif
