#ifndef SPR_PULSE_HPP
#define SPR_PULSE_HPP

#include <complex>

#include "spr/params.hpp"

namespace spr {

// Frequency-domain amplitude of the incident photon,
//   xi(omega) = (2 pi t_ph)^{-1/2} e^{i omega t0} / (omega - omega_ph + i/(2 t_ph)),
// normalised so that  integral |xi|^2 d omega = 1.
std::complex<double> pulse_spectrum(const PulseParams& p, double omega);

// Time-domain envelope, the transform  Xi(t) = integral xi(omega) e^{-i omega t} d omega:
//   Xi(t) = -i sqrt(2 pi / t_ph) e^{-i omega_ph (t-t0)} e^{-(t-t0)/(2 t_ph)}  for t > t0,
// zero before t0, and half the jump value exactly at t0.
std::complex<double> pulse_envelope(const PulseParams& p, double t);

}  // namespace spr

#endif
