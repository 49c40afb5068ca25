#ifndef SPR_DISPERSIVE_HPP
#define SPR_DISPERSIVE_HPP

#include <optional>
#include <vector>

#include "spr/params.hpp"
#include "spr/pulse.hpp"
#include "spr/quadrature.hpp"

namespace spr {

// Closed-form model of the pulled cavity driven by the Lorentzian photon.
// Everything here runs on the dimensionless trio (tau, K, D):
//   tau = (t - t0)/t_ph, K = kappa*t_ph, D = (omega_ph - omega_eff)*t_ph.

// theta(tau) * K * tau^2 * exp(-(K+1)tau/2) * R(x, y) with
// x = (K-1)tau/2, y = D tau and R = (cosh x - cos y)/(x^2 + y^2).
// R is evaluated by series below hypot(x,y) = 1/2, which absorbs the
// removable K=1, D=0 singularity of the textbook form exactly.
double cavity_population(double tau, double K, double D);

struct PopulationCurve {
  std::vector<double> tau;
  std::vector<double> value;
  double K = 0.0;
  double D = 0.0;
};
PopulationCurve sample_population(double K, double D, double tau_max, int n);

// |F[K(omega) xi(omega)](t)|^2 by adaptive quadrature, the independent check
// on cavity_population. The Lorentzian overload corrects for the truncated
// 1/omega^2 tails analytically and reaches 1e-6 absolute; the generic one
// integrates the supplied spectrum over a window and reports its error.
struct SpectralOptions {
  double center = 0.0;     // 0: centre on omega_eff
  double halfwidth = 0.0;  // 0: choose from kappa and the time offset
  double epsabs = 1e-10;
};
double cavity_population_spectral(const ComplexFn& spectrum, double omega_eff,
                                  double kappa, double t,
                                  const SpectralOptions& opt = {});
double cavity_population_spectral(const PulseParams& pulse, double omega_eff,
                                  double kappa, double t);

// (K/2) * population at the retarded time t - x (v = 1). Points with
// t - x <= 0 or x < 0 are outside the causal region and rejected.
double transmitted_density(double x, double t, const PopulationCurve& curve);

enum class ClickBranch { Resonant, Detuned, GeneralD };
enum class Counting { Infinite, Finite };

struct ClickProbability {
  double value = 0.0;
  ClickBranch branch = ClickBranch::Resonant;
  Counting counting = Counting::Infinite;
  double tau_m = 0.0;  // meaningful for finite counting only
};

// Infinite-counting closed forms: eta K/(K+1) on resonance,
// eta K(K+1)/((K+1)^2 + 16 X^2) at the far dispersive line D = 2X.
ClickProbability click_probability_infinite(double K, double X, ClickBranch branch, double eta);
// General probe detuning D: eta K(K+1)/((K+1)^2 + 4 D^2).
ClickProbability click_probability_general(double K, double D, double eta);

// Contrast lost to a finite counting window, Delta(tau_m) = (K/2) * integral
// of the population tail beyond tau_m. The approximate form is the
// large-K resonant shortcut (1 + 2/K) e^{-tau_m}.
double finite_time_delta(double K, double D, double tau_m);
double finite_time_delta_approx(double K, double tau_m);

// C = P_click(D=0) - P_click(D=2X); with tau_m, both branches keep only the
// clicks collected inside the window.
double contrast_dispersive(double K, double X, double eta,
                           std::optional<double> tau_m = std::nullopt);

// The K that maximizes infinite-counting contrast at fixed X, plus the
// large-X asymptote 2 X^{2/3}.
struct OptimalDecay {
  double K = 0.0;
  double asymptote = 0.0;
};
OptimalDecay optimal_cavity_decay(double X);

// eta (1 - 3/(2K)), trustworthy near K = K_opt(X) once X is around 100 or
// more; `valid` records that condition for the X the caller supplies.
struct ApproxContrast {
  double value = 0.0;
  bool valid = false;
};
ApproxContrast contrast_approx(double K, double eta, double X);

}  // namespace spr

#endif
