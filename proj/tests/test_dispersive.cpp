#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "spr/dispersive.hpp"
#include "spr/errors.hpp"
#include "spr/quadrature.hpp"
#include "spr/units.hpp"

using namespace spr;

namespace {

// dimensionful stand-in so the spectral path runs at realistic scales
PulseParams probe_pulse(double t_ph) {
  PulseParams p;
  p.t_ph = t_ph;
  p.t0 = 0.0;
  p.omega_ph = ghz_to_rad(4.0909);
  return p;
}

double delta_by_quadrature(double K, double D, double tau_m) {
  const QuadResult r = integrate_upper(
      [&](double tau) { return cavity_population(tau, K, D); }, tau_m, 1e-14, 1e-12);
  REQUIRE(r.converged);
  return 0.5 * K * r.value;
}

}  // namespace

TEST_CASE("population closed form basics") {
  CHECK(cavity_population(2.0, 1.0, 0.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
  for (const double K : {0.3, 1.0, 7.7})
    for (const double D : {0.0, 2.0})
      CHECK(cavity_population(0.0, K, D) == 0.0);
  CHECK(cavity_population(-1.0, 2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(cavity_population(1.0, 0.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(cavity_population(1.0, -2.0, 0.0), InvalidInput);

  // K=1, D=0 peaks at tau = 2 (dense sampling oracle)
  double best_tau = 0.0, best = -1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double tau = 8.0 * i / 4000.0;
    const double v = cavity_population(tau, 1.0, 0.0);
    if (v > best) {
      best = v;
      best_tau = tau;
    }
  }
  CHECK(best_tau == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(best == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-6));

  // continuity across the series/direct switch: K=2, D=0 crosses the
  // boundary at tau = 1, where x = (K-1)tau/2 hits 1/2
  const double below = cavity_population(1.0 - 1e-7, 2.0, 0.0);
  const double above = cavity_population(1.0 + 1e-7, 2.0, 0.0);
  CHECK(below == doctest::Approx(above).epsilon(1e-6));
}

TEST_CASE("population curve sampling") {
  const PopulationCurve c = sample_population(4.27, 0.0, 12.0, 481);
  CHECK(c.tau.front() == 0.0);
  CHECK(c.value.front() == 0.0);
  CHECK(c.K == 4.27);
  for (const double v : c.value) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK_THROWS_AS(sample_population(1.0, 0.0, -1.0, 10), InvalidInput);
  CHECK_THROWS_AS(sample_population(1.0, 0.0, 1.0, 1), InvalidInput);
}

TEST_CASE("spectral quadrature reproduces the closed form") {
  const double t_ph = 1.0 / 6.0 * 1e-6;
  const PulseParams p = probe_pulse(t_ph);

  struct Case {
    double K, D;
  };
  const std::vector<Case> cases = {
      {1.0, 0.0}, {4.27, 0.0}, {4.27, 7.28}, {0.1, 1.0}, {100.0, 30.0}, {1000.0, 0.0}};
  for (const Case& c : cases) {
    const double kappa = c.K / t_ph;
    const double omega_eff = p.omega_ph - c.D / t_ph;
    for (const double tau : {0.0, 0.05, 0.3, 1.0, 2.0, 3.7, 6.0, 10.0, 20.0}) {
      const double got = cavity_population_spectral(p, omega_eff, kappa, tau * t_ph);
      const double want = cavity_population(tau, c.K, c.D);
      CAPTURE(c.K);
      CAPTURE(c.D);
      CAPTURE(tau);
      CHECK(std::abs(got - want) < 1e-6);
      CHECK(got <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("spectral path: generic spectrum entry point") {
  const double t_ph = 2.5e-7;
  const PulseParams p = probe_pulse(t_ph);
  const double kappa = 2.0 / t_ph;

  SUBCASE("zero spectrum gives zero population") {
    const double v = cavity_population_spectral(
        [](double) { return std::complex<double>(0.0, 0.0); }, p.omega_ph, kappa,
        0.5 * t_ph);
    CHECK(v == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }

  SUBCASE("matches the Lorentzian overload") {
    SpectralOptions opt;
    opt.center = p.omega_ph;
    for (const double tau : {0.4, 1.7, 5.0}) {
      const double got = cavity_population_spectral(
          [&](double omega) { return pulse_spectrum(p, omega); }, p.omega_ph, kappa,
          tau * t_ph, opt);
      const double want = cavity_population(tau, 2.0, 0.0);
      CHECK(std::abs(got - want) < 1e-4);
    }
  }

  SUBCASE("negative time rejected") {
    CHECK_THROWS_AS(cavity_population_spectral(
                        [](double) { return std::complex<double>(1.0, 0.0); }, 1.0, 1.0,
                        -1.0),
                    InvalidInput);
  }
}

TEST_CASE("carrier translation symmetry of the two branches") {
  // up state probed on its line == down state probed on its line: both are
  // the D = 0 configuration, shifted by the pull 2 chi
  const double t_ph = 1.67e-7;
  PulseParams up = probe_pulse(t_ph);
  const double chi = mhz_to_rad(3.48);
  const double kappa = 4.27 / t_ph;
  PulseParams down = up;
  down.omega_ph = up.omega_ph - 2.0 * chi;
  for (const double tau : {0.5, 2.0, 6.0}) {
    const double a = cavity_population_spectral(up, up.omega_ph, kappa, tau * t_ph);
    const double b = cavity_population_spectral(down, down.omega_ph, kappa, tau * t_ph);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("transmitted density") {
  const PopulationCurve c = sample_population(1.0, 0.0, 20.0, 101);
  CHECK_THROWS_AS(transmitted_density(3.0, 2.9, c), InvalidInput);
  CHECK_THROWS_AS(transmitted_density(-0.1, 5.0, c), InvalidInput);

  // rides along at v = 1
  const double d1 = transmitted_density(1.0, 3.0, c);
  const double d2 = transmitted_density(1.0 + 0.7, 3.0 + 0.7, c);
  CHECK(d1 == doctest::Approx(d2).epsilon(1e-14));
  CHECK(d1 == doctest::Approx(0.5 * cavity_population(2.0, 1.0, 0.0)).epsilon(1e-14));

  // all of the photon comes back out: K/(K+1) of it through the detector port
  const QuadResult r = integrate_upper(
      [&](double tau) { return 0.5 * 1.0 * cavity_population(tau, 1.0, 0.0); }, 0.0,
      1e-13, 1e-11);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("click probabilities, infinite counting") {
  CHECK(click_probability_infinite(1.0, 0.0, ClickBranch::Resonant, 1.0).value ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(click_probability_infinite(1e7, 0.0, ClickBranch::Resonant, 0.9).value ==
        doctest::Approx(0.9).epsilon(1e-6));
  CHECK(click_probability_infinite(4.27, 3.64, ClickBranch::Detuned, 1.0).value ==
        doctest::Approx(0.0938).epsilon(2e-3));

  // general-D form closes over both branches
  const double K = 3.3, X = 2.2, eta = 0.77;
  CHECK(click_probability_general(K, 0.0, eta).value ==
        doctest::Approx(click_probability_infinite(K, X, ClickBranch::Resonant, eta).value)
            .epsilon(1e-14));
  CHECK(click_probability_general(K, 2.0 * X, eta).value ==
        doctest::Approx(click_probability_infinite(K, X, ClickBranch::Detuned, eta).value)
            .epsilon(1e-14));

  // the click is the time-integrated transmitted flux
  for (const double Kk : {0.5, 4.27}) {
    for (const double D : {0.0, 7.28}) {
      const QuadResult r = integrate_upper(
          [&](double tau) { return 0.5 * Kk * cavity_population(tau, Kk, D); }, 0.0,
          1e-13, 1e-11);
      CHECK(r.value ==
            doctest::Approx(click_probability_general(Kk, D, 1.0).value).epsilon(1e-6));
    }
  }

  CHECK_THROWS_AS(click_probability_infinite(1.0, 1.0, ClickBranch::GeneralD, 1.0),
                  InvalidInput);
  CHECK_THROWS_AS(click_probability_infinite(1.0, -1.0, ClickBranch::Resonant, 1.0),
                  InvalidInput);
  CHECK_THROWS_AS(click_probability_infinite(1.0, 1.0, ClickBranch::Resonant, 1.2),
                  InvalidInput);
}

TEST_CASE("finite counting window corrections") {
  // full-window limit: Delta(0) is exactly the infinite-counting click at unit
  // efficiency, for every branch including the degenerate K near 1 corner
  struct Case {
    double K, D;
  };
  for (const Case& c : std::vector<Case>{
           {4.27, 0.0}, {4.27, 7.28}, {10.0, 0.0}, {1.0, 0.0}, {1.0 + 1e-9, 1e-9}, {0.5, 3.0}}) {
    CHECK(finite_time_delta(c.K, c.D, 0.0) ==
          doctest::Approx(click_probability_general(c.K, c.D, 1.0).value).epsilon(1e-12));
  }

  // quadrature referee on both sides of the series/direct switch
  for (const Case& c : std::vector<Case>{
           {4.27, 0.0}, {4.27, 7.28}, {10.0, 0.0}, {1.07, 0.0}, {1.09, 0.0}, {0.5, 3.0}}) {
    for (const double tau_m : {0.5, 3.0, 6.0}) {
      const double want = delta_by_quadrature(c.K, c.D, tau_m);
      CHECK(finite_time_delta(c.K, c.D, tau_m) == doctest::Approx(want).epsilon(1e-9));
    }
  }

  // exact K=1, D=0 tail in closed form
  for (const double tau_m : {0.0, 1.0, 4.0, 9.0}) {
    const double want =
        0.25 * std::exp(-tau_m) * (2.0 + 2.0 * tau_m + tau_m * tau_m);
    CHECK(finite_time_delta(1.0, 0.0, tau_m) == doctest::Approx(want).epsilon(1e-12));
  }

  CHECK(finite_time_delta(4.0, 0.0, 200.0) == doctest::Approx(0.0).scale(1.0));

  // shortcut form used for counting-time budgeting
  CHECK(finite_time_delta_approx(10.0, 6.0) ==
        doctest::Approx(1.2 * std::exp(-6.0)).epsilon(1e-12));
  CHECK(finite_time_delta_approx(10.0, 6.0) == doctest::Approx(0.003).epsilon(7e-3));
  CHECK(finite_time_delta_approx(10.0, 3.0) == doctest::Approx(0.05).epsilon(0.2));
}

TEST_CASE("dispersive contrast") {
  for (const double K : {0.5, 2.0, 50.0})
    for (const double eta : {0.4, 1.0}) {
      CHECK(contrast_dispersive(K, 0.0, eta) == doctest::Approx(0.0).scale(1.0));
      CHECK(contrast_dispersive(K, 0.0, eta, 4.0) == doctest::Approx(0.0).scale(1.0));
    }

  CHECK(contrast_dispersive(4.27, 3.64, 1.0, 6.0) == doctest::Approx(0.71).epsilon(0.01));
  CHECK(contrast_dispersive(238.5, 1245.0, 1.0) == doctest::Approx(0.9935).epsilon(1e-3));

  // counting nothing yields no contrast; the window only ever helps
  CHECK(contrast_dispersive(4.27, 3.64, 1.0, 0.0) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(contrast_dispersive(4.27, 3.64, 1.0, 6.0) < contrast_dispersive(4.27, 3.64, 1.0));

  // 0 < C <= eta and strict growth in X
  for (const double K : {0.3, 1.0, 8.0, 300.0}) {
    double prev = 0.0;
    for (const double X : {0.2, 1.0, 3.0, 10.0, 40.0, 200.0}) {
      const double c = contrast_dispersive(K, X, 0.85);
      CHECK(c > 0.0);
      CHECK(c <= 0.85);
      CHECK(c > prev);
      prev = c;
    }
  }
}

TEST_CASE("optimal cavity decay") {
  const OptimalDecay d10 = optimal_cavity_decay(10.0);
  CHECK(d10.K == doctest::Approx(8.81).epsilon(1e-3));
  CHECK(d10.asymptote == doctest::Approx(9.28).epsilon(1e-3));
  CHECK(optimal_cavity_decay(3.64).K == doctest::Approx(4.29).epsilon(1e-3));
  CHECK(optimal_cavity_decay(0.5).K == doctest::Approx(1.0).epsilon(1e-12));

  // stationarity: the optimum satisfies 2K^3 + 3K^2 - 1 = 16 X^2 exactly
  for (const double X : {0.1, 0.5, 3.64, 10.0, 100.0, 1e4}) {
    const double K = optimal_cavity_decay(X).K;
    const double lhs = 2.0 * K * K * K + 3.0 * K * K - 1.0;
    CHECK(lhs == doctest::Approx(16.0 * X * X).epsilon(1e-11));
  }

  // local argmax of the contrast
  for (const double X : {0.1, 1.0, 10.0, 100.0, 1e4}) {
    const double K = optimal_cavity_decay(X).K;
    const double c0 = contrast_dispersive(K, X, 1.0);
    CHECK(contrast_dispersive(K * (1.0 + 1e-3), X, 1.0) <= c0);
    CHECK(contrast_dispersive(K * (1.0 - 1e-3), X, 1.0) <= c0);
  }

  CHECK_THROWS_AS(optimal_cavity_decay(0.0), InvalidInput);
}

TEST_CASE("approximate contrast law") {
  CHECK(contrast_approx(238.5, 1.0, 1245.0).value == doctest::Approx(0.99371).epsilon(1e-5));
  CHECK(contrast_approx(5.0, 0.0, 200.0).value == 0.0);
  CHECK(contrast_approx(10.0, 1.0, 99.0).valid == false);
  CHECK(contrast_approx(10.0, 1.0, 100.0).valid == true);

  // stays within a tenth of a point of the exact optimum once X >= 100
  for (const double X : {100.0, 300.0, 1000.0}) {
    const double K = optimal_cavity_decay(X).K;
    const double exact = contrast_dispersive(K, X, 1.0);
    const double approx = contrast_approx(K, 1.0, X).value;
    CHECK(std::abs(approx - exact) <= 1e-3);
  }

  // at the optimum, a third of the loss is the false click and two thirds the
  // missed resonant photon (exact identities of the stationary point)
  for (const double X : {100.0, 1000.0}) {
    const double K = optimal_cavity_decay(X).K;
    const double C = contrast_dispersive(K, X, 1.0);
    const double false_click =
        click_probability_infinite(K, X, ClickBranch::Detuned, 1.0).value;
    const double miss =
        1.0 - click_probability_infinite(K, X, ClickBranch::Resonant, 1.0).value;
    CHECK(false_click == doctest::Approx((1.0 - C) / 3.0).epsilon(1e-10));
    CHECK(miss == doctest::Approx(2.0 * (1.0 - C) / 3.0).epsilon(1e-10));
  }
}
