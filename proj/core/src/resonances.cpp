#include "spr/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "spr/errors.hpp"

namespace spr {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Kernel-closed one-excitation block for the omega_weighted bath:
// M = (I + i D/omega_r)^{-1} H with D = (kappa/2) diag(1, 0), the cavity
// channel damping only. Sampling the decay density at the instantaneous
// frequency of the radiating combination turns the memory kernel into the
// constant matrix D (i d/dt)/omega_r, which this inverse absorbs. The
// qubit-like eigenvalue then carries Im = -lambda^2 kappa_q/2 (to
// O(lambda^2) corrections) and the cavity-like one keeps kappa/2.
Mat2 weighted_block_1(const SystemParams& p, const DerivedQuantities& d) {
  const double b = p.g * d.Lambda_bs;
  const Mat2 h{{{p.omega_r - b, p.g}, {p.g, p.omega_q + b}}};
  const std::complex<double> a11 = 1.0 + 0.5 * kI * p.kappa / p.omega_r;
  Mat2 m;
  for (int j = 0; j < 2; ++j) {
    m[0][j] = h[0][j] / a11;
    m[1][j] = h[1][j];
  }
  return m;
}

}  // namespace

std::complex<double> ComplexResonances::qubit_like() const {
  return plus_is_qubit_like_ ? E_plus : E_minus;
}

std::complex<double> ComplexResonances::cavity_like() const {
  return plus_is_qubit_like_ ? E_minus : E_plus;
}

ComplexResonances resonances(const SystemParams& p, GuideBath bath) {
  const DerivedQuantities d = derive_couplings(p);
  ComplexResonances r;
  r.omega_r_bar = p.omega_r - 0.5 * kI * p.kappa;
  r.g_q = p.g - 0.5 * kI * d.Lambda_bs * d.kappa_q;
  r.g_r = p.g + 0.5 * kI * d.Lambda_bs * p.kappa;
  r.bs_shift = p.g * d.Lambda_bs;

  if (bath == GuideBath::flat) {
    const std::complex<double> half_sum = 0.5 * (r.omega_r_bar + p.omega_q);
    const std::complex<double> half_diff =
        0.5 * (r.omega_r_bar - p.omega_q) - r.bs_shift;
    const std::complex<double> root =
        std::sqrt(r.g_r * r.g_q + half_diff * half_diff);
    r.E_plus = half_sum + root;
    r.E_minus = half_sum - root;
  } else {
    const Mat2 m = weighted_block_1(p, d);
    const std::complex<double> half_sum = 0.5 * (m[0][0] + m[1][1]);
    const std::complex<double> half_diff = 0.5 * (m[0][0] - m[1][1]);
    const std::complex<double> root =
        std::sqrt(m[0][1] * m[1][0] + half_diff * half_diff);
    r.E_plus = half_sum + root;
    r.E_minus = half_sum - root;
  }
  r.plus_is_qubit_like_ =
      std::abs(r.E_plus - p.omega_q) <= std::abs(r.E_minus - p.omega_q);

  const std::complex<double> half_diff2 =
      0.5 * (r.omega_r_bar - p.omega_q) - 2.0 * r.bs_shift;
  const std::complex<double> half_sum2 =
      0.5 * (3.0 * r.omega_r_bar + p.omega_q);
  const std::complex<double> root2 =
      std::sqrt(2.0 * r.g_q * r.g_r + half_diff2 * half_diff2);
  r.E2_plus = half_sum2 + root2;
  r.E2_minus = half_sum2 - root2;
  return r;
}

Mat2 block_matrix_1(const SystemParams& p, const ComplexResonances& r,
                    GuideBath bath) {
  if (bath == GuideBath::omega_weighted) {
    return weighted_block_1(p, derive_couplings(p));
  }
  return Mat2{{{r.omega_r_bar - r.bs_shift, r.g_q},
               {r.g_r, p.omega_q + r.bs_shift}}};
}

Mat2 block_matrix_2(const SystemParams& p, const ComplexResonances& r) {
  return Mat2{{{2.0 * (r.omega_r_bar - r.bs_shift), 2.0 * r.g_q},
               {r.g_r, p.omega_q + r.omega_r_bar + 2.0 * r.bs_shift}}};
}

ModeSplit split_modes(const Mat2& m, std::complex<double> e_plus,
                      std::complex<double> e_minus) {
  const std::complex<double> gap = e_plus - e_minus;
  double scale = 0.0;
  for (const auto& row : m) {
    for (const auto& v : row) scale = std::max(scale, std::abs(v));
  }
  if (std::abs(gap) <= 1e-12 * scale) {
    throw SolverError(
        "mode splitting is numerically degenerate; the closed-form "
        "propagator cannot separate the two branches");
  }
  ModeSplit s;
  s.e_plus = e_plus;
  s.e_minus = e_minus;
  const std::complex<double> inv_gap = 1.0 / gap;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const std::complex<double> mij = m[i][j];
      const std::complex<double> diag = (i == j) ? 1.0 : 0.0;
      s.p_plus[i][j] = (mij - e_minus * diag) * inv_gap;
      s.p_minus[i][j] = (e_plus * diag - mij) * inv_gap;
    }
  }
  return s;
}

}  // namespace spr
