#ifndef SPR_RESONANCES_HPP
#define SPR_RESONANCES_HPP

#include <array>
#include <complex>

#include "spr/params.hpp"

namespace spr {

using Mat2 = std::array<std::array<std::complex<double>, 2>, 2>;

// Decay-density model of the transmission-line guides. flat keeps the
// coupling density constant, so every line damps with kappa. omega_weighted
// scales the density linearly with frequency (coupling ∝ sqrt(omega)); each
// line then samples the decay rate at its own frequency, and the qubit-like
// root damps with kappa_q = (omega_q/omega_r) kappa instead of kappa. For a
// linear density the frequency sampling closes exactly into a constant
// block: M = (I + i D/omega_r)^{-1} H with H the lossless block and
// D = (kappa/2) [[1, Lambda], [-Lambda, 0]].
enum class GuideBath { flat, omega_weighted };

// Complex poles of the damped qubit-resonator pair. E_plus carries the
// principal branch of the square root; for omega_q > omega_r that makes
// E_plus the qubit-like root (our documented ordering, nothing physical
// hangs on it). E2_plus/E2_minus are the analogous poles of the
// two-excitation (a^2, sigma_- a) block.
struct ComplexResonances {
  std::complex<double> omega_r_bar;  // omega_r - i kappa/2
  std::complex<double> g_q;          // g - i Lambda kappa_q / 2
  std::complex<double> g_r;          // g + i Lambda kappa / 2
  std::complex<double> E_plus;
  std::complex<double> E_minus;
  std::complex<double> E2_plus;
  std::complex<double> E2_minus;
  double bs_shift = 0.0;  // g * Lambda

  // Which single-excitation root is qubit-like (largest sigma_- weight).
  std::complex<double> qubit_like() const;
  std::complex<double> cavity_like() const;

 private:
  friend ComplexResonances resonances(const SystemParams&, GuideBath);
  bool plus_is_qubit_like_ = true;
};

ComplexResonances resonances(const SystemParams& p,
                             GuideBath bath = GuideBath::flat);

// One-excitation block matrix M with d/dt v = -i M v + drives,
// v = (⟨a⟩, ⟨σ-⟩). flat: M = [[ω̄_r - gΛ, g_q], [g_r, ω_q + gΛ]];
// omega_weighted: the kernel-closed form described at GuideBath.
Mat2 block_matrix_1(const SystemParams& p, const ComplexResonances& r,
                    GuideBath bath = GuideBath::flat);

// Two-excitation global block, v = (⟨a²⟩, ⟨σ-a⟩):
// M2 = [[2(ω̄_r - gΛ), 2 g_q], [g_r, ω_q + ω̄_r + 2gΛ]].
Mat2 block_matrix_2(const SystemParams& p, const ComplexResonances& r);

// Spectral projectors P± with M = E+ P+ + E- P-; P± = (M - E∓ I)/(E± - E∓).
// Throws SolverError when the roots are too close for the splitting to be
// numerically meaningful.
struct ModeSplit {
  std::complex<double> e_plus;
  std::complex<double> e_minus;
  Mat2 p_plus;
  Mat2 p_minus;
};

ModeSplit split_modes(const Mat2& m, std::complex<double> e_plus,
                      std::complex<double> e_minus);

}  // namespace spr

#endif
