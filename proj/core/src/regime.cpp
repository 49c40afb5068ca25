#include "spr/regime.hpp"

#include <cmath>
#include <cstdio>

namespace spr {

namespace {

std::string fmt_violation(const char* what, double value, double limit) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %.6g exceeds threshold %.6g", what, value, limit);
  return buf;
}

}  // namespace

RegimeReport validate_regime(const SystemParams& p, const RegimeThresholds& th) {
  const DerivedQuantities d = derive_couplings(p);
  RegimeReport r;
  r.four_lambda_sq = 4.0 * d.lambda * d.lambda;
  r.bs_ratio_sq = (d.lambda != 0.0)
                      ? (d.Lambda_bs / d.lambda) * (d.Lambda_bs / d.lambda)
                      : 0.0;
  r.kappa_over_omega_r = p.kappa / p.omega_r;
  r.kappa_q_over_omega_q = d.kappa_q / p.omega_q;

  r.dispersive_ok = r.four_lambda_sq <= th.dispersive;
  r.bs_ok = r.bs_ratio_sq <= th.bs;
  r.underdamped_ok = r.kappa_over_omega_r <= th.overdamp;

  if (!r.dispersive_ok)
    r.violations.push_back(fmt_violation("dispersive parameter 4*lambda^2",
                                         r.four_lambda_sq, th.dispersive));
  if (!r.bs_ok)
    r.violations.push_back(fmt_violation("beam-splitter weight (Lambda/lambda)^2",
                                         r.bs_ratio_sq, th.bs));
  if (!r.underdamped_ok)
    r.violations.push_back(fmt_violation("linewidth ratio kappa/omega_r",
                                         r.kappa_over_omega_r, th.overdamp));
  return r;
}

RegimeReport validate_regime(const SystemParams& p, const PulseParams& pulse,
                             const RegimeThresholds& th) {
  RegimeReport r = validate_regime(p, th);
  const DerivedQuantities d = derive_couplings(p);
  r.chi_t_ph = d.chi * pulse.t_ph;
  return r;
}

}  // namespace spr
