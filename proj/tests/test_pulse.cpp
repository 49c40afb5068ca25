#include <cmath>
#include <complex>

#include "doctest.h"
#include "spr/pulse.hpp"
#include "spr/quadrature.hpp"
#include "spr/units.hpp"

using namespace spr;

namespace {

const std::complex<double> I(0.0, 1.0);

PulseParams make_pulse(double t_ph, double t0 = 0.0, double omega_ph = 0.0) {
  PulseParams p;
  p.t_ph = t_ph;
  p.t0 = t0;
  p.omega_ph = omega_ph;
  return p;
}

// four-term large-argument form of E_n(W, T) = integral_W^inf e^{-i d T} d^-n dd
std::complex<double> tail_en(int n, double W, double T) {
  const std::complex<double> iwt(0.0, W * T);
  std::complex<double> sum = 1.0;
  std::complex<double> term = 1.0;
  for (int m = 1; m <= 4; ++m) {
    term *= -(n + m - 1.0) / iwt;
    sum += term;
  }
  return std::exp(-I * W * T) / (I * T * std::pow(W, n)) * sum;
}

}  // namespace

TEST_CASE("spectrum normalization across pulse durations") {
  for (const double t_ph : {1e-9, 1e-6, 1e-3, 0.1}) {
    // carrier a fixed multiple of the linewidth, so omega - omega_ph keeps
    // its precision at every duration
    const PulseParams p = make_pulse(t_ph, 0.0, 100.0 / t_ph);
    // integrate in units of the half-width so the integrand is O(1)-scaled
    const double hw = 0.5 / t_ph;
    const QuadResult r = integrate_line(
        [&](double s) {
          const double omega = p.omega_ph + s * hw;
          return std::norm(pulse_spectrum(p, omega)) * hw;
        },
        1e-12, 1e-10);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("spectrum peak and half-width") {
  const double t_ph = 3.7e-7;
  const PulseParams p = make_pulse(t_ph, 0.0, ghz_to_rad(4.1));
  const double pi = 0.5 * two_pi;
  const double peak = std::norm(pulse_spectrum(p, p.omega_ph));
  CHECK(peak == doctest::Approx(2.0 * t_ph / pi).epsilon(1e-12));
  const double half_up = std::norm(pulse_spectrum(p, p.omega_ph + 0.5 / t_ph));
  const double half_dn = std::norm(pulse_spectrum(p, p.omega_ph - 0.5 / t_ph));
  CHECK(half_up == doctest::Approx(0.5 * peak).epsilon(1e-12));
  CHECK(half_dn == doctest::Approx(0.5 * peak).epsilon(1e-12));
}

TEST_CASE("envelope causality and magnitude") {
  const double t_ph = 2.2e-7;
  const double t0 = 5e-8;
  const PulseParams p = make_pulse(t_ph, t0, ghz_to_rad(5.5));

  CHECK(pulse_envelope(p, t0 - 1e-12) == std::complex<double>(0.0, 0.0));
  CHECK(pulse_envelope(p, 0.0) == std::complex<double>(0.0, 0.0));

  // half the jump exactly at the leading edge
  const std::complex<double> at_edge = pulse_envelope(p, t0);
  CHECK(std::abs(at_edge + I * 0.5 * std::sqrt(two_pi / t_ph)) < 1e-9 * std::abs(at_edge));

  // e^{-1/2} amplitude decay after one photon duration
  const double a0 = std::sqrt(two_pi / t_ph);
  CHECK(std::abs(pulse_envelope(p, t0 + t_ph)) ==
        doctest::Approx(a0 * std::exp(-0.5)).epsilon(1e-12));

  // the carrier-stripped envelope has a constant -i phase
  for (const double tau : {0.1, 0.9, 3.3}) {
    const double t = t0 + tau * t_ph;
    const std::complex<double> stripped =
        pulse_envelope(p, t) * std::exp(I * p.omega_ph * (t - t0));
    CHECK(stripped.real() == doctest::Approx(0.0).scale(a0).epsilon(1e-14));
    CHECK(stripped.imag() < 0.0);
  }
}

TEST_CASE("envelope total energy matches the spectrum convention") {
  const double t_ph = 1.3e-6;
  const PulseParams p = make_pulse(t_ph, 0.0, ghz_to_rad(4.0909));
  const QuadResult r = integrate(
      [&](double t) { return std::norm(pulse_envelope(p, t)); }, 0.0, 100.0 * t_ph,
      1e-12, 1e-11);
  CHECK(r.converged);
  // integral |xi|^2 = 1 with Xi = integral xi e^{-i omega t} means
  // integral |Xi|^2 dt = 2 pi by Parseval
  CHECK(r.value == doctest::Approx(two_pi).epsilon(1e-10));
}

TEST_CASE("spectrum is the transform of the envelope") {
  const double t_ph = 4.4e-7;
  const double t0 = 1.1e-7;
  const PulseParams p = make_pulse(t_ph, t0, ghz_to_rad(4.2));
  // xi(omega) = (1/2pi) integral Xi(t) e^{i omega t} dt; the time integrand
  // dies exponentially so plain adaptive quadrature nails it
  for (const double off : {0.0, 0.3, -0.3, 7.0, -7.0}) {
    const double omega = p.omega_ph + off / t_ph;
    const CQuadResult r = integrate_c(
        [&](double t) { return pulse_envelope(p, t) * std::exp(I * omega * t); },
        t0, t0 + 90.0 * t_ph, 1e-13, 1e-12);
    CHECK(r.converged);
    const std::complex<double> expected = pulse_spectrum(p, omega);
    CHECK(std::abs(r.value / two_pi - expected) < 1e-9 * std::abs(expected));
  }
}

TEST_CASE("envelope equals the transform of the spectrum") {
  const double t_ph = 4.4e-7;
  const PulseParams p = make_pulse(t_ph, 0.0, ghz_to_rad(4.2));
  const double h = 0.5 / t_ph;
  const double amp = 1.0 / std::sqrt(two_pi * t_ph);
  // Xi(t) = integral xi(omega) e^{-i omega t} d omega over a moderate window,
  // split so the narrow line at delta = 0 stays resolved, plus analytic
  // corrections for the truncated 1/delta tails
  for (const double tau : {0.5, 1.0, 3.0}) {
    const double T = tau * t_ph;
    const double W = std::max(200.0 / t_ph, 50.0 / T);
    const auto g = [&](double delta) {
      return pulse_spectrum(p, p.omega_ph + delta);
    };
    std::complex<double> inside = 0.0;
    double abserr = 0.0;
    const double edges[4] = {-W, -40.0 * h, 40.0 * h, W};
    for (int s = 0; s < 3; ++s) {
      const CQuadResult r =
          integrate_osc_c(g, edges[s], edges[s + 1], T, 1e-9, 1e-10);
      CHECK(r.converged);
      inside += r.value;
      abserr += r.abserr;
    }
    // 1/(delta + i h) = sum_l (-i h)^l delta^-(l+1) on the right; the left
    // tail flips the sign of delta, which conjugates E_n and the coefficient
    std::complex<double> tails = 0.0;
    std::complex<double> cr = amp;
    std::complex<double> cl = -amp;
    for (int l = 0; l < 3; ++l) {
      const std::complex<double> en = tail_en(l + 1, W, T);
      tails += cr * en + cl * std::conj(en);
      cr *= -I * h;
      cl *= I * h;
    }
    const std::complex<double> lhs = inside + tails;
    const std::complex<double> rhs =
        pulse_envelope(p, T) * std::exp(I * p.omega_ph * T);
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(rhs) + 10.0 * abserr);
  }
}
