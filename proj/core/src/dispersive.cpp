#include "spr/dispersive.hpp"

#include <cmath>
#include <complex>

#include "spr/errors.hpp"
#include "spr/units.hpp"

namespace spr {

namespace {

const std::complex<double> I(0.0, 1.0);

// R(x, y) = (cosh x - cos y)/(x^2 + y^2), the removable-singularity kernel of
// the population law. Series below hypot(x, y) = 1/2: with u = x^2, w = -y^2,
//   R = sum_{n>=1} s_n / (2n)!,   s_n = sum_{j<n} u^j w^{n-1-j},
// where s_n obeys s_{n+1} = u s_n + w^n. No divided differences, so the
// K -> 1, D -> 0 corner costs no precision.
double coshcos_over_sumsq(double x, double y) {
  if (std::hypot(x, y) >= 0.5) {
    return (std::cosh(x) - std::cos(y)) / (x * x + y * y);
  }
  const double u = x * x;
  const double w = -y * y;
  double s = 1.0;       // s_1
  double wpow = 1.0;    // w^{n-1}
  double fact = 2.0;    // (2n)!
  double sum = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const double term = s / fact;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    wpow *= w;
    s = u * s + wpow;
    fact *= (2.0 * n + 1.0) * (2.0 * n + 2.0);
  }
  return sum;
}

void check_K(double K) {
  if (!(K > 0.0)) throw InvalidInput("K = kappa*t_ph must be positive");
}

}  // namespace

double cavity_population(double tau, double K, double D) {
  check_K(K);
  if (tau <= 0.0) return 0.0;
  const double x = 0.5 * (K - 1.0) * tau;
  const double y = D * tau;
  if (std::hypot(x, y) >= 0.5) {
    // cosh folded into the prefactor exponentials so large K tau cannot overflow
    const double denom = (K - 1.0) * (K - 1.0) + 4.0 * D * D;
    const double num = 0.5 * (std::exp(-tau) + std::exp(-K * tau)) -
                       std::exp(-0.5 * (K + 1.0) * tau) * std::cos(y);
    return 4.0 * K * num / denom;
  }
  return K * tau * tau * std::exp(-0.5 * (K + 1.0) * tau) * coshcos_over_sumsq(x, y);
}

PopulationCurve sample_population(double K, double D, double tau_max, int n) {
  check_K(K);
  if (!(tau_max > 0.0)) throw InvalidInput("tau_max must be positive");
  if (n < 2) throw InvalidInput("need at least two samples");
  PopulationCurve c;
  c.K = K;
  c.D = D;
  c.tau.resize(n);
  c.value.resize(n);
  for (int i = 0; i < n; ++i) {
    c.tau[i] = tau_max * static_cast<double>(i) / (n - 1);
    c.value[i] = cavity_population(c.tau[i], K, D);
  }
  return c;
}

double transmitted_density(double x, double t, const PopulationCurve& curve) {
  if (x < 0.0) throw InvalidInput("detector position must be nonnegative");
  if (!(t - x > 0.0))
    throw InvalidInput("(x, t) outside the causal region: need t > x with v = 1");
  return 0.5 * curve.K * cavity_population(t - x, curve.K, curve.D);
}

namespace {

// E_n(W, T) = integral_W^inf e^{-i delta T} delta^{-n} d delta, asymptotic in
// 1/(W T); the caller guarantees W T >= 40 so five terms leave ~1e-8 relative.
std::complex<double> tail_En(int n, double W, double T) {
  const std::complex<double> iWT = I * W * T;
  std::complex<double> sum = 1.0;
  std::complex<double> term = 1.0;
  double poch = n;
  for (int m = 1; m <= 4; ++m) {
    term *= -poch / iWT;
    sum += term;
    poch += 1.0;
  }
  return std::exp(-I * W * T) / (I * T * std::pow(W, n)) * sum;
}

struct LorentzianTail {
  // sigma_j = sum_{m+l=j} c^m h^l for the 1/delta expansion of the integrand
  std::complex<double> sigma[3];
  double P = 0.0;

  std::complex<double> right(double W, double T) const {
    std::complex<double> s = 0.0;
    std::complex<double> ij = 1.0;  // (-i)^j
    for (int j = 0; j < 3; ++j) {
      s += ij * sigma[j] * tail_En(2 + j, W, T);
      ij *= -I;
    }
    return I * P * s;
  }
  std::complex<double> left(double W, double T) const {
    std::complex<double> s = 0.0;
    std::complex<double> ij = 1.0;  // (+i)^j
    for (int j = 0; j < 3; ++j) {
      s += ij * sigma[j] * std::conj(tail_En(2 + j, W, T));
      ij *= I;
    }
    return I * P * s;
  }
};

// Quadrature of h(delta) e^{-i delta T} over [-W, W]. When a resonance line
// occupies a sliver of the window the oscillatory integrator samples right
// past it, so cut the window at every known feature edge and integrate the
// pieces separately.
CQuadResult osc_window(const ComplexFn& h, double W, std::vector<double> cuts,
                       double T, double epsabs, double epsrel) {
  std::vector<double> pts;
  pts.push_back(-W);
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (c > -W && c < W && c - pts.back() > 1e-12 * W) pts.push_back(c);
  pts.push_back(W);
  CQuadResult out;
  out.value = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const CQuadResult r = integrate_osc_c(h, pts[i], pts[i + 1], T, epsabs, epsrel);
    out.value += r.value;
    out.abserr += r.abserr;
    out.converged = out.converged && r.converged;
  }
  return out;
}

}  // namespace

double cavity_population_spectral(const PulseParams& pulse, double omega_eff,
                                  double kappa, double t) {
  pulse.validate();
  if (!(kappa > 0.0)) throw InvalidInput("kappa must be positive");
  if (t < 0.0) throw InvalidInput("population is defined for t >= 0");
  const double T = t - pulse.t0;
  if (T < 0.0) return 0.0;  // pulse has not arrived

  const double h = 0.5 / pulse.t_ph;
  const double de = omega_eff - pulse.omega_ph;
  const std::complex<double> c = I * de + 0.5 * kappa;
  const double P = std::sqrt(kappa / (2.0 * two_pi * pulse.t_ph));

  // centred integrand: F ~ (2 pi)^{-1/2} integral htilde(delta) e^{-i delta T}
  const ComplexFn htilde = [&](double delta) {
    return std::sqrt(0.5 * kappa) / (c - I * delta) /
           std::sqrt(two_pi * pulse.t_ph) / (delta + I * h);
  };

  const double w_base =
      std::max({50.0 / pulse.t_ph, 50.0 * kappa, 50.0 * std::abs(de)});
  std::complex<double> integral;
  double abserr = 0.0;
  if (T * w_base <= 40.0) {
    // bounded total phase across the integrand's support: the rational-map
    // integrator handles both the oscillation and the 1/delta^2 tails, but
    // only once the lines are O(1) wide in the integration variable
    const double w_scale = std::max({2.0 * h, kappa, std::abs(de)});
    const CQuadResult r = integrate_line_c(
        [&](double s) {
          const double delta = s * w_scale;
          return htilde(delta) * std::exp(-I * delta * T) * w_scale;
        },
        1e-11, 1e-9);
    integral = r.value;
    abserr = r.abserr;
  } else {
    const double W = std::max(w_base, 40.0 / T);
    // pulse line at 0 (width h), pulled-cavity line at de (width kappa/2)
    const std::vector<double> cuts = {-40.0 * h, 40.0 * h, de - 20.0 * kappa,
                                      de + 20.0 * kappa};
    const CQuadResult r = osc_window(htilde, W, cuts, T, 1e-12, 1e-10);
    LorentzianTail tail;
    tail.P = P;
    tail.sigma[0] = 1.0;
    tail.sigma[1] = c + h;
    tail.sigma[2] = c * c + c * h + h * h;
    integral = r.value + tail.right(W, T) + tail.left(W, T);
    abserr = r.abserr;
  }
  if (abserr > 1e-7)
    throw SolverError("spectral population quadrature did not converge", abserr);
  const double amp = std::abs(integral) / std::sqrt(two_pi);
  return amp * amp;
}

double cavity_population_spectral(const ComplexFn& spectrum, double omega_eff,
                                  double kappa, double t, const SpectralOptions& opt) {
  if (!(kappa > 0.0)) throw InvalidInput("kappa must be positive");
  if (t < 0.0) throw InvalidInput("population is defined for t >= 0");
  const double center = opt.center != 0.0 ? opt.center : omega_eff;
  const double de = omega_eff - center;
  const ComplexFn f = [&](double delta) {
    const double omega = center + delta;
    const std::complex<double> kernel =
        std::sqrt(0.5 * kappa) / (I * (omega_eff - omega) + 0.5 * kappa);
    return kernel * spectrum(omega);
  };

  // With no analytic handle on the spectrum, the discarded tails can only be
  // bounded from the integrand edges; widen until the bound is harmless.
  double W = opt.halfwidth != 0.0
                 ? opt.halfwidth
                 : std::max({50.0 * kappa, 50.0 * std::abs(de),
                             (t > 0.0 ? 40.0 / t : 0.0)});
  const double target = 0.1 * std::max(opt.epsabs, 1e-12);
  double tail_bound = 0.0;
  for (int grow = 0; grow < 24; ++grow) {
    const double edge = std::abs(f(-W)) + std::abs(f(W));
    tail_bound = (t * W > 40.0) ? 2.0 * edge / t : edge * W;
    if (tail_bound <= target || opt.halfwidth != 0.0) break;
    W *= 2.0;
  }

  std::vector<double> cuts = {de - 20.0 * kappa, de + 20.0 * kappa,
                              -20.0 * kappa, 20.0 * kappa};
  std::sort(cuts.begin(), cuts.end());
  CQuadResult r;
  if (t * W <= 40.0) {
    std::vector<double> pts;
    pts.push_back(-W);
    for (double c : cuts)
      if (c > pts.back() && c < W) pts.push_back(c);
    pts.push_back(W);
    r.value = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      const CQuadResult piece = integrate_c(
          [&](double d) { return f(d) * std::exp(-I * d * t); }, pts[i],
          pts[i + 1], opt.epsabs, 1e-10);
      r.value += piece.value;
      r.abserr += piece.abserr;
      r.converged = r.converged && piece.converged;
    }
  } else {
    r = osc_window(f, W, cuts, t, opt.epsabs, 1e-10);
  }
  const double err = r.abserr + tail_bound;
  if (!r.converged || err > std::max(opt.epsabs, 1e-10) * 1e4)
    throw SolverError("spectral population quadrature did not converge", err);
  const double amp = std::abs(r.value) / std::sqrt(two_pi);
  return amp * amp;
}

namespace {

void check_click_args(double K, double eta) {
  check_K(K);
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidInput("eta must lie in [0, 1]");
}

}  // namespace

ClickProbability click_probability_infinite(double K, double X, ClickBranch branch,
                                            double eta) {
  check_click_args(K, eta);
  if (X < 0.0) throw InvalidInput("X = chi*t_ph must be nonnegative");
  ClickProbability p;
  p.branch = branch;
  p.counting = Counting::Infinite;
  switch (branch) {
    case ClickBranch::Resonant:
      p.value = eta * K / (K + 1.0);
      break;
    case ClickBranch::Detuned:
      p.value = eta * K * (K + 1.0) / ((K + 1.0) * (K + 1.0) + 16.0 * X * X);
      break;
    case ClickBranch::GeneralD:
      throw InvalidInput("general detuning takes D, use click_probability_general");
  }
  return p;
}

ClickProbability click_probability_general(double K, double D, double eta) {
  check_click_args(K, eta);
  ClickProbability p;
  p.branch = ClickBranch::GeneralD;
  p.counting = Counting::Infinite;
  p.value = eta * K * (K + 1.0) / ((K + 1.0) * (K + 1.0) + 4.0 * D * D);
  return p;
}

double finite_time_delta(double K, double D, double tau_m) {
  check_K(K);
  if (tau_m < 0.0) throw InvalidInput("tau_m must be nonnegative");
  const double b = 0.5 * (K + 1.0);
  const double xh = 0.5 * (K - 1.0);

  if (std::hypot(xh, D) * (tau_m + 6.0 / b + 1.0) >= 0.4) {
    const double denom = (K - 1.0) * (K - 1.0) + 4.0 * D * D;
    const double denom2 = (K + 1.0) * (K + 1.0) + 4.0 * D * D;
    const double brace =
        (K * std::exp(-tau_m) + std::exp(-K * tau_m)) / (2.0 * K) -
        2.0 * std::exp(-b * tau_m) *
            ((K + 1.0) * std::cos(D * tau_m) - 2.0 * D * std::sin(D * tau_m)) / denom2;
    return 2.0 * K * K * brace / denom;
  }

  // joint K -> 1, D -> 0 region: expand the population kernel termwise and
  // integrate each tau^{2n} e^{-b tau} tail exactly
  const double u = xh * xh;
  const double w = -D * D;
  const double z = b * tau_m;
  double s = 1.0;                    // s_n
  double wpow = 1.0;                 // w^{n-1}
  double bpow = b * b * b;           // b^{2n+1}
  double T = 1.0 + z + 0.5 * z * z;  // T_{2n}(z), truncated exp series
  double zpow = z * z;               // z^j
  double zfact = 2.0;                // j!
  int j = 2;
  double sum = 0.0;
  for (int n = 1; n <= 24; ++n) {
    const double term = s * T / bpow;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    wpow *= w;
    s = u * s + wpow;
    bpow *= b * b;
    for (int step = 0; step < 2; ++step) {
      ++j;
      zfact *= j;
      zpow *= z;
      T += zpow / zfact;
    }
  }
  return 0.5 * K * K * std::exp(-z) * sum;
}

double finite_time_delta_approx(double K, double tau_m) {
  check_K(K);
  if (tau_m < 0.0) throw InvalidInput("tau_m must be nonnegative");
  return (1.0 + 2.0 / K) * std::exp(-tau_m);
}

double contrast_dispersive(double K, double X, double eta, std::optional<double> tau_m) {
  check_click_args(K, eta);
  if (X < 0.0) throw InvalidInput("X = chi*t_ph must be nonnegative");
  const double on = click_probability_infinite(K, X, ClickBranch::Resonant, eta).value;
  const double off = click_probability_infinite(K, X, ClickBranch::Detuned, eta).value;
  double c = on - off;
  if (tau_m) {
    c -= eta * (finite_time_delta(K, 0.0, *tau_m) - finite_time_delta(K, 2.0 * X, *tau_m));
  }
  return c;
}

OptimalDecay optimal_cavity_decay(double X) {
  if (!(X > 0.0)) throw InvalidInput("X must be positive");
  const double q = 16.0 * X * X + 1.0;
  const double u = std::cbrt(X * std::sqrt(q) + 0.25 * q - 0.125);
  OptimalDecay d;
  d.K = u + 0.25 / u - 0.5;
  d.asymptote = 2.0 * std::cbrt(X * X);
  return d;
}

ApproxContrast contrast_approx(double K, double eta, double X) {
  check_click_args(K, eta);
  ApproxContrast a;
  a.value = eta * (1.0 - 1.5 / K);
  a.valid = X >= 100.0;
  return a;
}

}  // namespace spr
