#include "doctest.h"
#include "spr/params.hpp"
#include "spr/regime.hpp"
#include "spr/units.hpp"

using namespace spr;

namespace {

// Reference operating point used throughout: 5 GHz transmon-like qubit read
// through a 4.0909 GHz cavity (the 10:1 detuning-ratio design).
SystemParams ref_system() {
  SystemParams p;
  p.omega_q = ghz_to_rad(5.00);
  p.omega_r = ghz_to_rad(4.0909);
  p.g = mhz_to_rad(53.6);
  p.kappa = mhz_to_rad(4.08);
  p.eta = 1.0;
  return p;
}

}  // namespace

TEST_CASE("derived couplings at the reference point") {
  const SystemParams p = ref_system();
  const DerivedQuantities d = derive_couplings(p);

  CHECK(d.lambda == doctest::Approx(0.059).epsilon(2e-3));
  CHECK(d.Lambda_bs == doctest::Approx(p.g / (p.omega_q + p.omega_r)).epsilon(1e-12));
  CHECK(rad_to_mhz(d.chi) == doctest::Approx(3.48).epsilon(2e-3));
  CHECK(rad_to_mhz(d.kappa_q) == doctest::Approx(4.99).epsilon(2e-3));
  CHECK(d.omega_eff_up == doctest::Approx(p.omega_r + d.chi));
  CHECK(d.omega_eff_down == doctest::Approx(p.omega_r - d.chi));

  // lifetime of the qubit through the cavity ports
  CHECK(d.t_purcell == doctest::Approx(1.0 / (p.kappa * d.lambda * d.lambda)));
  const DerivedQuantities dq = derive_couplings(p, true);
  CHECK(dq.t_purcell == doctest::Approx(1.0 / (d.kappa_q * d.lambda * d.lambda)));
  CHECK(dq.t_purcell < d.t_purcell);
}

TEST_CASE("coupling identities and scale covariance") {
  const SystemParams p = ref_system();
  const DerivedQuantities d = derive_couplings(p);
  CHECK(d.chi == doctest::Approx(p.g * (d.lambda + d.Lambda_bs)).epsilon(1e-14));
  // chi = 2 lambda^2 omega_q / r with r = lambda/Lambda
  const double r = d.lambda / d.Lambda_bs;
  CHECK(d.chi == doctest::Approx(2.0 * d.lambda * d.lambda * p.omega_q / r).epsilon(1e-12));

  // scaling every rate by s leaves the dimensionless ratios alone
  SystemParams ps = p;
  const double s = 3.7;
  ps.omega_q *= s;
  ps.omega_r *= s;
  ps.g *= s;
  ps.kappa *= s;
  const DerivedQuantities ds = derive_couplings(ps);
  CHECK(ds.lambda == doctest::Approx(d.lambda).epsilon(1e-14));
  CHECK(ds.Lambda_bs == doctest::Approx(d.Lambda_bs).epsilon(1e-14));
  CHECK(ds.chi == doctest::Approx(s * d.chi).epsilon(1e-14));
  CHECK(ds.t_purcell == doctest::Approx(d.t_purcell / s).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  SystemParams p = ref_system();
  p.omega_r = p.omega_q;
  CHECK_THROWS_AS(derive_couplings(p), InvalidInput);

  p = ref_system();
  p.eta = 1.5;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p.eta = -0.1;
  CHECK_THROWS_AS(p.validate(), InvalidInput);

  p = ref_system();
  p.kappa = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);

  PulseParams pulse;
  pulse.t_ph = 0.0;
  CHECK_THROWS_AS(pulse.validate(), InvalidInput);
  pulse.t_ph = -1e-6;
  CHECK_THROWS_AS(pulse.validate(), InvalidInput);
}

TEST_CASE("dimensionless groups: Table-II-row-1-like pulse") {
  const SystemParams p = ref_system();
  PulseParams pulse;
  pulse.t_ph = us_to_s(1.0) / 6.0;  // counting window 1 us at t_m = 6 t_ph
  pulse.t0 = 0.0;
  pulse.omega_ph = resonant_up_carrier(p);

  const DimensionlessGroup u = make_dimensionless(p, pulse);
  CHECK(u.K == doctest::Approx(4.27).epsilon(2e-3));
  CHECK(u.X == doctest::Approx(3.64).epsilon(3e-3));
  CHECK(u.D_up == doctest::Approx(0.0).scale(1.0));

  // the two pulled lines sit 2X apart for any carrier
  CHECK(u.D_up - u.D_down == doctest::Approx(-2.0 * u.X).epsilon(1e-12));
  CHECK(u.D_down == doctest::Approx(2.0 * u.X).epsilon(1e-12));
  CHECK(u.detuning(QubitState::Up) == u.D_up);
  CHECK(u.detuning(QubitState::Down) == u.D_down);

  CHECK(u.tau_of(pulse.t0) == 0.0);
  CHECK(u.tau_of(pulse.t0 + 6.0 * pulse.t_ph) == doctest::Approx(6.0));

  // carrier shifts move both detunings together
  PulseParams shifted = pulse;
  shifted.omega_ph += 2.0 / pulse.t_ph;
  const DimensionlessGroup us = make_dimensionless(p, shifted);
  CHECK(us.D_up == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(us.D_up - us.D_down == doctest::Approx(-2.0 * us.X).epsilon(1e-12));

  // chi = 0 collapses the branches
  SystemParams p0 = p;
  p0.g = 0.0;
  PulseParams pulse0 = pulse;
  pulse0.omega_ph = resonant_up_carrier(p0);
  const DimensionlessGroup u0 = make_dimensionless(p0, pulse0);
  CHECK(u0.X == 0.0);
  CHECK(u0.D_up == u0.D_down);
}

TEST_CASE("regime validation flags") {
  const SystemParams p = ref_system();
  PulseParams pulse;
  pulse.t_ph = us_to_s(1.0) / 6.0;
  pulse.omega_ph = resonant_up_carrier(p);

  RegimeReport r = validate_regime(p, pulse);
  CHECK(r.all_ok());
  CHECK(r.violations.empty());
  CHECK(r.four_lambda_sq == doctest::Approx(4.0 * 0.059 * 0.059).epsilon(5e-3));
  CHECK(r.bs_ratio_sq == doctest::Approx(0.01).epsilon(2e-2));  // 10:1 ratio design
  CHECK(r.kappa_over_omega_r < 0.01);
  CHECK(r.kappa_q_over_omega_q > 0.0);
  CHECK(r.chi_t_ph == doctest::Approx(3.64).epsilon(3e-3));

  SUBCASE("dispersive threshold") {
    SystemParams bad = p;  // g such that 4 lambda^2 = 0.5
    bad.g = std::sqrt(0.5 / 4.0) * (bad.omega_q - bad.omega_r);
    const RegimeReport rb = validate_regime(bad);
    CHECK_FALSE(rb.dispersive_ok);
    CHECK_FALSE(rb.all_ok());
    CHECK(rb.violations.size() == 1);
  }
  SUBCASE("overdamped threshold") {
    SystemParams bad = p;
    bad.kappa = 0.02 * bad.omega_r;
    const RegimeReport rb = validate_regime(bad);
    CHECK_FALSE(rb.underdamped_ok);
  }
  SUBCASE("beam-splitter threshold") {
    SystemParams bad = p;  // push omega_q far above omega_r
    bad.omega_q = 3.0 * bad.omega_r;
    const RegimeReport rb = validate_regime(bad);
    CHECK_FALSE(rb.bs_ok);
  }
  SUBCASE("thresholds are adjustable") {
    RegimeThresholds th;
    th.dispersive = 1e-4;
    const RegimeReport rb = validate_regime(p, th);
    CHECK_FALSE(rb.dispersive_ok);
  }
}
