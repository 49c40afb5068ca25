#ifndef SPR_PARAMS_HPP
#define SPR_PARAMS_HPP

#include "spr/errors.hpp"

namespace spr {

enum class QubitState { Up, Down };

// Raw hardware parameters, angular frequencies in rad/s.
struct SystemParams {
  double omega_q = 0.0;  // qubit transition
  double omega_r = 0.0;  // bare resonator
  double g = 0.0;        // qubit-resonator coupling
  double kappa = 0.0;    // resonator linewidth (both ports combined)
  double eta = 1.0;      // detector efficiency

  // Throws InvalidInput on nonsensical values (nonpositive frequencies,
  // negative coupling, eta outside [0,1], omega_q == omega_r).
  void validate() const;
};

// Quantities fixed by SystemParams alone.
struct DerivedQuantities {
  double lambda = 0.0;          // g / (omega_q - omega_r)
  double Lambda_bs = 0.0;       // g / (omega_q + omega_r), beam-splitter weight
  double chi = 0.0;             // dispersive pull, g * (lambda + Lambda_bs)
  double kappa_q = 0.0;         // qubit-frequency-matched linewidth (omega_q/omega_r) * kappa
  double t_purcell = 0.0;       // qubit lifetime through the resonator
  double omega_eff_up = 0.0;    // resonator pulled by qubit up:   omega_r + chi
  double omega_eff_down = 0.0;  // resonator pulled by qubit down: omega_r - chi
};

// When purcell_uses_kappa_q is false (default) the Purcell time is
// 1/(kappa * lambda^2); the switch substitutes kappa_q to probe how much the
// stiffer qubit-frequency linewidth matters.
DerivedQuantities derive_couplings(const SystemParams& p, bool purcell_uses_kappa_q = false);

// Incident single-photon pulse: Lorentzian line of width 1/t_ph centred at
// omega_ph, switched on at t0.
struct PulseParams {
  double t_ph = 0.0;      // photon duration (seconds)
  double t0 = 0.0;        // arrival time of the leading edge
  double omega_ph = 0.0;  // carrier (rad/s)

  void validate() const;  // t_ph > 0 required
};

// The dimensionless combinations every readout formula runs on.
struct DimensionlessGroup {
  double K = 0.0;       // kappa * t_ph
  double X = 0.0;       // chi * t_ph
  double D_up = 0.0;    // (omega_ph - omega_eff_up) * t_ph
  double D_down = 0.0;  // (omega_ph - omega_eff_down) * t_ph
  double t_ph = 0.0;
  double t0 = 0.0;

  double tau_of(double t) const { return (t - t0) / t_ph; }
  double detuning(QubitState s) const { return s == QubitState::Up ? D_up : D_down; }
};

DimensionlessGroup make_dimensionless(const SystemParams& p, const PulseParams& pulse);

// Helper for "probe sits on the qubit-up pulled line": omega_ph = omega_r + chi.
double resonant_up_carrier(const SystemParams& p);

}  // namespace spr

#endif
