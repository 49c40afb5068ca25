#include "spr/pulse.hpp"

#include <cmath>

#include "spr/units.hpp"

namespace spr {

namespace {
const std::complex<double> I(0.0, 1.0);
}

std::complex<double> pulse_spectrum(const PulseParams& p, double omega) {
  p.validate();
  const double norm = 1.0 / std::sqrt(two_pi * p.t_ph);
  const std::complex<double> phase = std::exp(I * omega * p.t0);
  return norm * phase / (omega - p.omega_ph + I / (2.0 * p.t_ph));
}

std::complex<double> pulse_envelope(const PulseParams& p, double t) {
  p.validate();
  const double dt = t - p.t0;
  if (dt < 0.0) return {0.0, 0.0};
  const double amp = std::sqrt(two_pi / p.t_ph);
  std::complex<double> val =
      -I * amp * std::exp(-dt / (2.0 * p.t_ph)) * std::exp(-I * p.omega_ph * dt);
  if (dt == 0.0) val *= 0.5;  // symmetric value at the jump
  return val;
}

}  // namespace spr
