#include "spr/params.hpp"

#include <cmath>
#include <string>

namespace spr {

void SystemParams::validate() const {
  if (!(omega_q > 0.0)) throw InvalidInput("omega_q must be positive");
  if (!(omega_r > 0.0)) throw InvalidInput("omega_r must be positive");
  if (omega_q == omega_r)
    throw InvalidInput("omega_q equal to omega_r: dispersive expansion undefined");
  if (g < 0.0) throw InvalidInput("g must be nonnegative");
  if (!(kappa > 0.0)) throw InvalidInput("kappa must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidInput("eta must lie in [0, 1]");
  if (!std::isfinite(omega_q) || !std::isfinite(omega_r) || !std::isfinite(g) ||
      !std::isfinite(kappa) || !std::isfinite(eta))
    throw InvalidInput("system parameters must be finite");
}

DerivedQuantities derive_couplings(const SystemParams& p, bool purcell_uses_kappa_q) {
  p.validate();
  DerivedQuantities d;
  d.lambda = p.g / (p.omega_q - p.omega_r);
  d.Lambda_bs = p.g / (p.omega_q + p.omega_r);
  d.chi = p.g * (d.lambda + d.Lambda_bs);
  d.kappa_q = (p.omega_q / p.omega_r) * p.kappa;
  const double kp = purcell_uses_kappa_q ? d.kappa_q : p.kappa;
  d.t_purcell = 1.0 / (kp * d.lambda * d.lambda);  // inf when g == 0, by design
  d.omega_eff_up = p.omega_r + d.chi;
  d.omega_eff_down = p.omega_r - d.chi;
  return d;
}

void PulseParams::validate() const {
  if (!(t_ph > 0.0)) throw InvalidInput("t_ph must be positive");
  if (!std::isfinite(t_ph) || !std::isfinite(t0) || !std::isfinite(omega_ph))
    throw InvalidInput("pulse parameters must be finite");
}

DimensionlessGroup make_dimensionless(const SystemParams& p, const PulseParams& pulse) {
  pulse.validate();
  const DerivedQuantities d = derive_couplings(p);
  DimensionlessGroup u;
  u.K = p.kappa * pulse.t_ph;
  u.X = d.chi * pulse.t_ph;
  u.D_up = (pulse.omega_ph - d.omega_eff_up) * pulse.t_ph;
  u.D_down = (pulse.omega_ph - d.omega_eff_down) * pulse.t_ph;
  u.t_ph = pulse.t_ph;
  u.t0 = pulse.t0;
  return u;
}

double resonant_up_carrier(const SystemParams& p) {
  const DerivedQuantities d = derive_couplings(p);
  return d.omega_eff_up;
}

}  // namespace spr
