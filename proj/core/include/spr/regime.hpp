#ifndef SPR_REGIME_HPP
#define SPR_REGIME_HPP

#include <string>
#include <vector>

#include "spr/params.hpp"

namespace spr {

// The analytic treatment assumes a dispersive, underdamped, weakly
// beam-splitter-coupled system. These are the default tripwires.
struct RegimeThresholds {
  double dispersive = 0.05;  // fail when 4 lambda^2 exceeds this
  double bs = 0.05;          // fail when (Lambda/lambda)^2 exceeds this
  double overdamp = 0.01;    // fail when kappa/omega_r exceeds this
};

struct RegimeReport {
  double four_lambda_sq = 0.0;
  double bs_ratio_sq = 0.0;        // (Lambda/lambda)^2
  double kappa_over_omega_r = 0.0;
  double kappa_q_over_omega_q = 0.0;
  double chi_t_ph = 0.0;           // 0 when no pulse was supplied

  bool dispersive_ok = false;
  bool bs_ok = false;
  bool underdamped_ok = false;

  bool all_ok() const { return dispersive_ok && bs_ok && underdamped_ok; }
  // Human-readable lines for each failed check, empty when all_ok().
  std::vector<std::string> violations;
};

RegimeReport validate_regime(const SystemParams& p, const RegimeThresholds& th = {});
RegimeReport validate_regime(const SystemParams& p, const PulseParams& pulse,
                             const RegimeThresholds& th = {});

}  // namespace spr

#endif
