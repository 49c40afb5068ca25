#include "spr/transport.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "spr/errors.hpp"
#include "spr/expsum.hpp"
#include "spr/units.hpp"

namespace spr {
namespace {

using C = std::complex<double>;
constexpr C kJ{0.0, 1.0};

struct C2 {
  C x;
  C y;
};

C2 apply(const Mat2& m, const C2& v) {
  return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
}

// Everything the propagation needs, shifted into the frame that rotates at
// the probe carrier (once per excitation). In this frame every rate is a
// detuning or a linewidth, so exponents stay small and the k-grid phases
// |delta * s| are the only large numbers left.
struct Frame {
  DerivedQuantities d;
  ComplexResonances res;
  ModeSplit s1;  // modes of the one-excitation block, carrier removed
  ModeSplit s2;  // modes of the two-excitation core block
  C e1[2];       // frame eigenvalues, [0] = plus branch
  C e2[2];
  double omega_ph = 0.0;
  double h = 0.0;    // envelope decay 1/(2 t_ph)
  double f_ph = 0.0; // coupling at the carrier
  C c_xi;            // Xi(v t) e^{i omega_ph t} = c_xi e^{-h s}
  C c_amp;           // xi(omega_ph + delta) e^{-i delta t0} = c_amp / (delta + i h)
  double t0 = 0.0;
  double t_ph = 0.0;
  double lambda = 0.0;
  double Lambda = 0.0;
  double em_L = 0.0;  // Lambda in the guide sources, 0 unless the direct
                      // qubit emission channel is requested
  double eta = 1.0;
  bool fk_sqrt = false;
};

Frame make_frame(const SystemParams& p, const PulseParams& pulse,
                 const SolveOptions& opt) {
  Frame fr;
  const GuideBath bath =
      opt.fk_sqrt ? GuideBath::omega_weighted : GuideBath::flat;
  fr.d = derive_couplings(p);
  fr.res = resonances(p, bath);
  Mat2 m1 = block_matrix_1(p, fr.res, bath);
  Mat2 m2 = block_matrix_2(p, fr.res);
  for (int i = 0; i < 2; ++i) {
    m1[i][i] -= pulse.omega_ph;
    m2[i][i] -= 2.0 * pulse.omega_ph;
  }
  fr.e1[0] = fr.res.E_plus - pulse.omega_ph;
  fr.e1[1] = fr.res.E_minus - pulse.omega_ph;
  fr.e2[0] = fr.res.E2_plus - 2.0 * pulse.omega_ph;
  fr.e2[1] = fr.res.E2_minus - 2.0 * pulse.omega_ph;
  fr.s1 = split_modes(m1, fr.e1[0], fr.e1[1]);
  fr.s2 = split_modes(m2, fr.e2[0], fr.e2[1]);
  fr.omega_ph = pulse.omega_ph;
  fr.h = 0.5 / pulse.t_ph;
  // Coupling at the carrier. The weighted bath anchors the decay density at
  // the resonator line, f(k)^2 = (kappa/4pi)(v k / omega_r), so the carrier
  // value picks up sqrt(omega_ph/omega_r).
  fr.f_ph = std::sqrt(p.kappa / (2.0 * two_pi));
  if (opt.fk_sqrt) fr.f_ph *= std::sqrt(pulse.omega_ph / p.omega_r);
  fr.c_amp = std::polar(1.0 / std::sqrt(two_pi * pulse.t_ph),
                        pulse.omega_ph * pulse.t0);
  fr.c_xi = -kJ * two_pi * fr.c_amp;
  fr.t0 = pulse.t0;
  fr.t_ph = pulse.t_ph;
  fr.lambda = fr.d.lambda;
  fr.Lambda = fr.d.Lambda_bs;
  fr.em_L = opt.direct_qubit_emission ? fr.d.Lambda_bs : 0.0;
  fr.eta = p.eta;
  fr.fk_sqrt = opt.fk_sqrt;
  return fr;
}

const Mat2& proj1(const Frame& fr, int mu) {
  return mu == 0 ? fr.s1.p_plus : fr.s1.p_minus;
}
const Mat2& proj2(const Frame& fr, int mu) {
  return mu == 0 ? fr.s2.p_plus : fr.s2.p_minus;
}

// Incident spectral amplitude against the grid offsets, free phase removed.
C xi_amp(const Frame& fr, double delta) {
  return fr.c_amp / C(delta, fr.h);
}

double coupling(const Frame& fr, double delta) {
  if (!fr.fk_sqrt) return fr.f_ph;
  return fr.f_ph * std::sqrt((fr.omega_ph + delta) / fr.omega_ph);
}

// Re-expresses a sum built on the clock u = s + t0 on the clock s.
ExpSum shift_time(const ExpSum& f, double t0) {
  if (t0 == 0.0) return f;
  ExpSum out;
  for (const ExpTerm& t : f.terms()) {
    const C et = std::exp(t.z * t0);
    double binom = 1.0;
    for (int j = t.m; j >= 0; --j) {
      out.add(t.c * et * binom * std::pow(t0, t.m - j), t.z, j);
      binom *= static_cast<double>(j) / static_cast<double>(t.m - j + 1);
    }
  }
  out.compact();
  return out;
}

std::vector<C> exp_table(const ExpSum& f, double s) {
  std::vector<C> out;
  out.reserve(f.size());
  for (const ExpTerm& t : f.terms()) out.push_back(std::exp(t.z * s));
  return out;
}

void guard_horizon(const KGrid& grid, double t0, double t_m) {
  if (t_m <= t0)
    throw InvalidInput("measurement time must lie after the pulse arrival");
  if (t_m - t0 > grid.s_max * (1.0 + 1e-9))
    throw InvalidInput("k-grid was built for a shorter horizon than t_m");
}

// ---------------------------------------------------------------------------
// One excitation: qubit starts down, the photon scatters off the pulled
// resonator. Everything reduces to the 2-vector (<a>, <sigma_->) plus one
// quadrature per guide mode.

struct GroundSolution {
  Frame fr;
  const KGrid* grid = nullptr;
  double s_m = 0.0;
  ExpSum A;   // <0|a|Psi>, frame
  ExpSum S;   // <0|sigma_-|Psi>, frame
  ExpSum AS;  // A (+ em_L S), the guide source
  double nphot = 0.0;  // on-grid photon norm
  double n0 = 1.0;     // normalization actually applied
  bool probe = true;
};

GroundSolution make_ground(const SystemParams& p, const PulseParams& pulse,
                           const KGrid& grid, double t_m,
                           const SolveOptions& opt) {
  p.validate();
  pulse.validate();
  check_coverage(grid, p, pulse);
  guard_horizon(grid, pulse.t0, t_m);

  GroundSolution gs;
  gs.fr = make_frame(p, pulse, opt);
  gs.grid = &grid;
  gs.s_m = t_m - pulse.t0;
  gs.probe = opt.probe;

  for (std::size_t i = 0; i < grid.size(); ++i)
    gs.nphot += grid.weight[i] * std::norm(xi_amp(gs.fr, grid.delta[i]));
  gs.n0 = opt.probe ? gs.nphot : 1.0;

  if (opt.probe) {
    const C2 d0{-gs.fr.f_ph * gs.fr.c_xi,
                -gs.fr.Lambda * gs.fr.f_ph * gs.fr.c_xi};
    for (int mu = 0; mu < 2; ++mu) {
      const C2 pd = apply(proj1(gs.fr, mu), d0);
      ExpSum dx;
      dx.add(pd.x, C(-gs.fr.h, 0.0));
      ExpSum dy;
      dy.add(pd.y, C(-gs.fr.h, 0.0));
      gs.A.add(conv_exp(-kJ * gs.fr.e1[mu], dx, gs.s_m));
      gs.S.add(conv_exp(-kJ * gs.fr.e1[mu], dy, gs.s_m));
    }
    gs.A.compact();
    gs.S.compact();
    gs.AS.add(gs.A);
    if (gs.fr.em_L != 0.0) gs.AS.add(gs.S, gs.fr.em_L);
    gs.AS.compact();
  }
  return gs;
}

// Guide amplitudes at one instant; b1 gets the free incident wave on top of
// the scattered part shared by both guides.
void ground_guides_at(const GroundSolution& gs, double s, std::vector<C>& b1,
                      std::vector<C>& b2) {
  const KGrid& g = *gs.grid;
  b1.resize(g.size());
  b2.resize(g.size());
  const std::vector<C> exps = exp_table(gs.AS, s);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double delta = g.delta[i];
    const C pk = std::polar(1.0, -delta * s);
    const C conv = gs.AS.empty()
                       ? C(0.0, 0.0)
                       : conv_exp_at(-kJ * delta, gs.AS, s, exps, pk);
    const double fk = coupling(gs.fr, delta);
    b2[i] = fk * conv;
    b1[i] = (gs.probe ? xi_amp(gs.fr, delta) * pk : C(0.0, 0.0)) + fk * conv;
  }
}

double ground_click_at(const GroundSolution& gs, double s) {
  if (gs.fr.eta == 0.0 || !gs.probe) return 0.0;
  const KGrid& g = *gs.grid;
  const std::vector<C> exps = exp_table(gs.AS, s);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double delta = g.delta[i];
    const C pk = std::polar(1.0, -delta * s);
    const C conv = conv_exp_at(-kJ * delta, gs.AS, s, exps, pk);
    sum += g.weight[i] * std::norm(coupling(gs.fr, delta) * conv);
  }
  return gs.fr.eta * sum / gs.n0;
}

double ground_norm_at(const GroundSolution& gs, double s) {
  const KGrid& g = *gs.grid;
  std::vector<C> b1, b2;
  ground_guides_at(gs, s, b1, b2);
  double n = std::norm(gs.A.eval(s)) + std::norm(gs.S.eval(s));
  for (std::size_t i = 0; i < g.size(); ++i)
    n += g.weight[i] * (std::norm(b1[i]) + std::norm(b2[i]));
  return n;
}

// ---------------------------------------------------------------------------
// Two excitations: dressed excited qubit plus the probe photon. The sector
// splits into the decaying dressed state (phi), the global pair
// (<a^2>, <sigma_- a>), one driven 2-vector per guide mode, and the
// two-photon field, which is only ever reduced, never stored.

struct ExcitedSolution {
  Frame fr;
  const KGrid* grid = nullptr;
  double s_m = 0.0;
  ExpSum a_phi, s_phi;            // dressed-state amplitudes, frame, clock s
  ExpSum a2, sa;                  // global pair amplitudes
  std::vector<ExpSum> b_phi;      // per-mode dressed-state emission
  std::vector<ExpSum> xp, yp;     // driven pair parts, identical in both guides
  std::vector<ExpSum> xh, yh;     // incident-photon extras, guide I only
  std::vector<ExpSum> src2;       // X^II (+ em_L Y^II), pair-field source
  std::vector<ExpSum> src1;       // X^I (+ em_L Y^I)
  double nphot = 0.0;
  double nphi0 = 0.0;  // dressed-state norm 1 + lambda^2
  double n0 = 1.0;     // nphi0 times the on-grid photon norm when probed
  bool probe = true;
};

ExcitedSolution make_excited(const SystemParams& p, const PulseParams& pulse,
                             const KGrid& grid, double t_m,
                             const SolveOptions& opt) {
  p.validate();
  pulse.validate();
  check_coverage(grid, p, pulse);
  guard_horizon(grid, pulse.t0, t_m);

  ExcitedSolution ex;
  ex.fr = make_frame(p, pulse, opt);
  ex.grid = &grid;
  ex.s_m = t_m - pulse.t0;
  ex.probe = opt.probe;
  const Frame& fr = ex.fr;
  const std::size_t n = grid.size();

  for (std::size_t i = 0; i < n; ++i)
    ex.nphot += grid.weight[i] * std::norm(xi_amp(fr, grid.delta[i]));
  ex.nphi0 = 1.0 + fr.lambda * fr.lambda;
  ex.n0 = (opt.probe ? ex.nphot : 1.0) * ex.nphi0;

  // Dressed-state decay, evolving since t = 0; the stage before the pulse
  // arrives is folded into the coefficients.
  ExpSum as_phi_t;  // a_phi (+ em_L s_phi) on the clock t, for the guides
  for (int mu = 0; mu < 2; ++mu) {
    const C2 w = apply(proj1(fr, mu), {C(fr.lambda, 0.0), C(1.0, 0.0)});
    const C pre = std::exp(-kJ * fr.e1[mu] * fr.t0);
    ex.a_phi.add(w.x * pre, -kJ * fr.e1[mu]);
    ex.s_phi.add(w.y * pre, -kJ * fr.e1[mu]);
    as_phi_t.add(w.x + fr.em_L * w.y, -kJ * fr.e1[mu]);
  }
  ex.a_phi.compact();
  ex.s_phi.compact();
  as_phi_t.compact();

  ex.b_phi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double delta = grid.delta[i];
    ExpSum bt = conv_exp(-kJ * delta, as_phi_t, t_m);
    ExpSum bs = shift_time(bt, fr.t0);
    ex.b_phi[i].add(bs, coupling(fr, delta));
    ex.b_phi[i].compact();
  }

  if (!opt.probe) return ex;  // pure decay: nothing else is populated

  // Global pair, driven by the pulse scattering off the dressed state.
  ExpSum d0, d1;
  for (const ExpTerm& t : ex.a_phi.terms())
    d0.add(-2.0 * fr.f_ph * fr.c_xi * t.c, t.z - fr.h, t.m);
  for (const ExpTerm& t : ex.s_phi.terms())
    d1.add(-fr.f_ph * fr.c_xi * t.c, t.z - fr.h, t.m);
  for (const ExpTerm& t : ex.a_phi.terms())
    d1.add(-fr.Lambda * fr.f_ph * fr.c_xi * t.c, t.z - fr.h, t.m);
  d0.compact();
  d1.compact();
  for (int nu = 0; nu < 2; ++nu) {
    const ExpSum cd0 = conv_exp(-kJ * fr.e2[nu], d0, ex.s_m);
    const ExpSum cd1 = conv_exp(-kJ * fr.e2[nu], d1, ex.s_m);
    const Mat2& pr = proj2(fr, nu);
    ex.a2.add(cd0, pr[0][0]);
    ex.a2.add(cd1, pr[0][1]);
    ex.sa.add(cd0, pr[1][0]);
    ex.sa.add(cd1, pr[1][1]);
  }
  ex.a2.compact();
  ex.sa.compact();

  // Per-mode pairs. The driven part is guide-independent; the incident
  // photon adds a homogeneous piece in guide I only.
  ex.xp.resize(n);
  ex.yp.resize(n);
  ex.xh.resize(n);
  ex.yh.resize(n);
  ex.src2.resize(n);
  ex.src1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double delta = grid.delta[i];
    const double fk = coupling(fr, delta);

    ExpSum dx;
    dx.add(ex.a2, fk);
    if (fr.em_L != 0.0) dx.add(ex.sa, fr.em_L * fk);
    ExpSum dy;
    dy.add(ex.sa, fk);
    for (const ExpTerm& t : ex.b_phi[i].terms()) {
      dx.add(-fr.f_ph * fr.c_xi * t.c, t.z - fr.h, t.m);
      dy.add(-fr.Lambda * fr.f_ph * fr.c_xi * t.c, t.z - fr.h, t.m);
    }
    dx.compact();
    dy.compact();

    for (int mu = 0; mu < 2; ++mu) {
      const C pole = -kJ * (delta + fr.e1[mu]);
      const ExpSum cx = conv_exp(pole, dx, ex.s_m);
      const ExpSum cy = conv_exp(pole, dy, ex.s_m);
      const Mat2& pr = proj1(fr, mu);
      ex.xp[i].add(cx, pr[0][0]);
      ex.xp[i].add(cy, pr[0][1]);
      ex.yp[i].add(cx, pr[1][0]);
      ex.yp[i].add(cy, pr[1][1]);

      const C2 w = apply(pr, {C(fr.lambda, 0.0), C(1.0, 0.0)});
      const C pre = xi_amp(fr, delta) * std::exp(-kJ * fr.e1[mu] * fr.t0);
      ex.xh[i].add(w.x * pre, pole);
      ex.yh[i].add(w.y * pre, pole);
    }
    ex.xp[i].compact();
    ex.yp[i].compact();

    ex.src2[i].add(ex.xp[i]);
    if (fr.em_L != 0.0) ex.src2[i].add(ex.yp[i], fr.em_L);
    ex.src2[i].compact();
    ex.src1[i].add(ex.src2[i]);
    ex.src1[i].add(ex.xh[i]);
    if (fr.em_L != 0.0) ex.src1[i].add(ex.yh[i], fr.em_L);
    ex.src1[i].compact();
  }
  return ex;
}

// Scratch for the pair-field reductions at one instant: precomputed
// exponentials aligned with each source's term list, plus the per-mode
// carrier phases. With these in hand a (k, k') evaluation costs no
// transcendental calls.
struct PairScratch {
  std::vector<std::vector<C>> exps1, exps2;
  std::vector<C> phase;
  std::vector<double> fk;
  double s = 0.0;
};

PairScratch make_scratch(const ExcitedSolution& ex, double s) {
  const KGrid& g = *ex.grid;
  PairScratch sc;
  sc.s = s;
  const std::size_t n = g.size();
  sc.exps1.resize(n);
  sc.exps2.resize(n);
  sc.phase.resize(n);
  sc.fk.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sc.exps1[i] = exp_table(ex.src1[i], s);
    sc.exps2[i] = exp_table(ex.src2[i], s);
    sc.phase[i] = std::polar(1.0, -g.delta[i] * s);
    sc.fk[i] = coupling(ex.fr, g.delta[i]);
  }
  return sc;
}

// sum_{k,k'} w w' |<0| b^a_k b^a_k' |Psi>|^2 over the full square for one
// guide (the field is symmetric, so the lower triangle is mirrored).
double same_guide_pair_sum(const ExcitedSolution& ex, const PairScratch& sc,
                           const std::vector<ExpSum>& src,
                           const std::vector<std::vector<C>>& exps) {
  const KGrid& g = *ex.grid;
  const std::size_t n = g.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double di = g.delta[i];
    double row = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      const C z0 = -kJ * (di + g.delta[j]);
      const C e0 = sc.phase[i] * sc.phase[j];
      const C v = sc.fk[j] * conv_exp_at(z0, src[i], sc.s, exps[i], e0) +
                  sc.fk[i] * conv_exp_at(z0, src[j], sc.s, exps[j], e0);
      const double q = g.weight[j] * std::norm(v);
      row += (j == i) ? q : 2.0 * q;
    }
    total += g.weight[i] * row;
  }
  return total;
}

// sum over the full rectangle of |<0| b^I_k b^II_k' |Psi>|^2.
double cross_guide_pair_sum(const ExcitedSolution& ex, const PairScratch& sc) {
  const KGrid& g = *ex.grid;
  const std::size_t n = g.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double di = g.delta[i];
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const C z0 = -kJ * (di + g.delta[j]);
      const C e0 = sc.phase[i] * sc.phase[j];
      const C v = sc.fk[j] * conv_exp_at(z0, ex.src1[i], sc.s, sc.exps1[i], e0) +
                  sc.fk[i] * conv_exp_at(z0, ex.src2[j], sc.s, sc.exps2[j], e0);
      row += g.weight[j] * std::norm(v);
    }
    total += g.weight[i] * row;
  }
  return total;
}

struct ClickParts {
  double singles = 0.0;     // sum w (|X^II|^2 + |Y^II|^2)
  double pairs_22 = 0.0;    // sum sum w w' |<b^II b^II>|^2
  double pairs_cross = 0.0; // sum sum w w' |<b^I b^II>|^2
};

ClickParts click_parts_at(const ExcitedSolution& ex, double s,
                          bool with_cross) {
  ClickParts cp;
  const KGrid& g = *ex.grid;
  if (!ex.probe) {
    for (std::size_t i = 0; i < g.size(); ++i)
      cp.singles += g.weight[i] * std::norm(ex.b_phi[i].eval(s));
    return cp;
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    cp.singles += g.weight[i] * (std::norm(ex.xp[i].eval(s)) +
                                 std::norm(ex.yp[i].eval(s)));
  const PairScratch sc = make_scratch(ex, s);
  cp.pairs_22 = same_guide_pair_sum(ex, sc, ex.src2, sc.exps2);
  if (with_cross) cp.pairs_cross = cross_guide_pair_sum(ex, sc);
  return cp;
}

double phi_norm_at(const ExcitedSolution& ex, double s) {
  const KGrid& g = *ex.grid;
  double nb = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    nb += g.weight[i] * std::norm(ex.b_phi[i].eval(s));
  return std::norm(ex.a_phi.eval(s)) + std::norm(ex.s_phi.eval(s)) + 2.0 * nb;
}

double pq_excited_at(const ExcitedSolution& ex, double s) {
  if (!ex.probe) return std::norm(ex.s_phi.eval(s)) / ex.n0;
  const KGrid& g = *ex.grid;
  double sum = std::norm(ex.sa.eval(s));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const C yp = ex.yp[i].eval(s);
    const C yh = ex.yh[i].eval(s);
    sum += g.weight[i] * (std::norm(yp) + std::norm(yp + yh));
  }
  return sum / ex.n0;
}

// Full two-excitation norm; needs all three pair rectangles.
double excited_norm_at(const ExcitedSolution& ex, double s) {
  const KGrid& g = *ex.grid;
  const PairScratch sc = make_scratch(ex, s);
  const double p11 = same_guide_pair_sum(ex, sc, ex.src1, sc.exps1);
  const double p22 = same_guide_pair_sum(ex, sc, ex.src2, sc.exps2);
  const double pcr = cross_guide_pair_sum(ex, sc);
  double singles = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const C xp = ex.xp[i].eval(s);
    const C yp = ex.yp[i].eval(s);
    const C xi = xp + ex.xh[i].eval(s);
    const C yi = yp + ex.yh[i].eval(s);
    singles += g.weight[i] * (std::norm(xp) + std::norm(yp) + std::norm(xi) +
                              std::norm(yi));
  }
  return 0.5 * (p11 + p22) + pcr + singles + 0.5 * std::norm(ex.a2.eval(s)) +
         std::norm(ex.sa.eval(s));
}

}  // namespace

RunResult solve_ground(const SystemParams& p, const PulseParams& pulse,
                       const KGrid& grid, double t_m,
                       const SolveOptions& opt) {
  const GroundSolution gs = make_ground(p, pulse, grid, t_m, opt);
  RunResult r;
  r.grid_nodes = grid.size();
  r.grid_halfspan = grid.halfspan;
  r.initial_norm = gs.n0;

  const int np = std::max(2, opt.pq_samples);
  r.pq_curve.reserve(np);
  r.click_curve.reserve(np);
  for (int j = 0; j < np; ++j) {
    const double s = gs.s_m * j / (np - 1);
    r.pq_curve.push_back({pulse.t0 + s, std::norm(gs.S.eval(s)) / gs.n0});
    r.click_curve.push_back({pulse.t0 + s, ground_click_at(gs, s)});
  }
  r.p_qubit = r.pq_curve.back().value;
  r.click = r.click_curve.back().value;
  r.first_order = r.click;

  if (opt.norms && gs.probe) {
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
      const double drift =
          std::abs(ground_norm_at(gs, frac * gs.s_m) / gs.nphot - 1.0);
      r.norm_drift = std::max(r.norm_drift, drift);
    }
  }
  return r;
}

SingleExcitationState ground_state_at(const SystemParams& p,
                                      const PulseParams& pulse,
                                      const KGrid& grid, double t,
                                      const SolveOptions& opt) {
  if (t < pulse.t0)
    throw InvalidInput("state snapshots start at the pulse arrival time");
  const GroundSolution gs = make_ground(p, pulse, grid, t, opt);
  const double s = gs.s_m;
  SingleExcitationState st;
  st.t = t;
  ground_guides_at(gs, s, st.b_guide1, st.b_guide2);
  st.a = gs.A.eval(s);
  st.sigma = gs.S.eval(s);
  const C lab = std::polar(1.0, -pulse.omega_ph * t);
  st.a *= lab;
  st.sigma *= lab;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    st.b_guide1[i] *= lab;
    st.b_guide2[i] *= lab;
  }
  return st;
}

RunResult solve_excited(const SystemParams& p, const PulseParams& pulse,
                        const KGrid& grid, double t_m,
                        const SolveOptions& opt) {
  const ExcitedSolution ex = make_excited(p, pulse, grid, t_m, opt);
  const Frame& fr = ex.fr;
  RunResult r;
  r.grid_nodes = grid.size();
  r.grid_halfspan = grid.halfspan;
  r.initial_norm = ex.n0;

  const int np = std::max(2, opt.pq_samples);
  r.pq_curve.reserve(np);
  for (int j = 0; j < np; ++j) {
    const double s = ex.s_m * j / (np - 1);
    r.pq_curve.push_back({pulse.t0 + s, pq_excited_at(ex, s)});
  }
  r.p_qubit = r.pq_curve.back().value;

  const int nc = std::max(1, opt.click_samples);
  r.click_curve.reserve(nc);
  for (int j = 1; j <= nc; ++j) {
    const double s = ex.s_m * j / nc;
    const ClickParts cp = click_parts_at(ex, s, true);
    const double n_ii = cp.singles + cp.pairs_cross + cp.pairs_22;
    const double click =
        (fr.eta * n_ii - 0.5 * fr.eta * fr.eta * cp.pairs_22) / ex.n0;
    r.click_curve.push_back({pulse.t0 + s, click});
    if (j == nc) {
      r.first_order = fr.eta * n_ii / ex.n0;
      r.two_photon = 0.5 * fr.eta * fr.eta * cp.pairs_22 / ex.n0;
      r.cross_guide = fr.eta * cp.pairs_cross / ex.n0;
    }
  }
  r.click = r.click_curve.back().value;

  if (opt.norms) {
    for (double frac : {0.5, 1.0}) {
      const double drift =
          std::abs(phi_norm_at(ex, frac * ex.s_m) / ex.nphi0 - 1.0);
      r.norm_drift = std::max(r.norm_drift, drift);
    }
    if (ex.probe) {
      const double n20 = ex.nphi0 * ex.nphot;
      const double drift = std::abs(excited_norm_at(ex, ex.s_m) / n20 - 1.0);
      r.norm_drift = std::max(r.norm_drift, drift);
    }
  }
  return r;
}

TwoExcitationState excited_state_at(const SystemParams& p,
                                    const PulseParams& pulse,
                                    const KGrid& grid, double t,
                                    const SolveOptions& opt) {
  if (t < pulse.t0)
    throw InvalidInput("state snapshots start at the pulse arrival time");
  const ExcitedSolution ex = make_excited(p, pulse, grid, t, opt);
  const double s = ex.s_m;
  const std::size_t n = grid.size();
  TwoExcitationState st;
  st.t = t;
  const C lab1 = std::polar(1.0, -pulse.omega_ph * t);
  const C lab2 = lab1 * lab1;

  st.a_phi = ex.a_phi.eval(s) * lab1;
  st.sigma_phi = ex.s_phi.eval(s) * lab1;
  st.b_phi.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    st.b_phi[i] = ex.b_phi[i].eval(s) * lab1;

  st.ba_guide1.assign(n, C(0.0, 0.0));
  st.bs_guide1.assign(n, C(0.0, 0.0));
  st.ba_guide2.assign(n, C(0.0, 0.0));
  st.bs_guide2.assign(n, C(0.0, 0.0));
  if (ex.probe) {
    st.a2 = ex.a2.eval(s) * lab2;
    st.sa = ex.sa.eval(s) * lab2;
    for (std::size_t i = 0; i < n; ++i) {
      const C xp = ex.xp[i].eval(s);
      const C yp = ex.yp[i].eval(s);
      st.ba_guide2[i] = xp * lab2;
      st.bs_guide2[i] = yp * lab2;
      st.ba_guide1[i] = (xp + ex.xh[i].eval(s)) * lab2;
      st.bs_guide1[i] = (yp + ex.yh[i].eval(s)) * lab2;
    }
    if (opt.assemble_field) {
      if (n > 3000)
        throw InvalidInput(
            "two-photon field assembly is limited to grids of 3000 nodes");
      const PairScratch sc = make_scratch(ex, s);
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      st.phi22.assign(n * n, C(0.0, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const C z0 = -kJ * (grid.delta[i] + grid.delta[j]);
          const C e0 = sc.phase[i] * sc.phase[j];
          const C v =
              sc.fk[j] * conv_exp_at(z0, ex.src2[i], s, sc.exps2[i], e0) +
              sc.fk[i] * conv_exp_at(z0, ex.src2[j], s, sc.exps2[j], e0);
          st.phi22[i * n + j] = v * inv_sqrt2 * lab2;
        }
      }
    }
  }
  return st;
}

ContrastResult full_contrast(const SystemParams& p, const PulseParams& pulse,
                             const KGrid& grid, double t_m,
                             const SolveOptions& opt) {
  ContrastResult c;
  c.up = solve_excited(p, pulse, grid, t_m, opt);
  c.down = solve_ground(p, pulse, grid, t_m, opt);
  c.p_click_up = c.up.click;
  c.p_click_down = c.down.click;
  c.c_n = c.up.click - c.down.click;
  c.p_up = c.up.p_qubit;
  return c;
}

ConvergenceReport grid_convergence(const SystemParams& p,
                                   const PulseParams& pulse, double t_m,
                                   int levels, const GridOptions& gopt,
                                   const SolveOptions& opt) {
  if (levels < 1) throw InvalidInput("grid_convergence needs at least 1 level");
  ConvergenceReport rep;
  rep.levels.reserve(levels);
  double prev_cn = 0.0;
  double prev_delta = 0.0;
  for (int lvl = 0; lvl < levels; ++lvl) {
    const KGrid g = build_grid(p, pulse, t_m, gopt.refined(lvl));
    const ContrastResult c = full_contrast(p, pulse, g, t_m, opt);
    ConvergenceLevel row;
    row.level = lvl;
    row.nodes = g.size();
    row.c_n = c.c_n;
    row.p_up = c.p_up;
    row.delta_cn = lvl == 0 ? 0.0 : (c.c_n - prev_cn) * 100.0;
    if (lvl >= 2 && std::abs(row.delta_cn) > std::abs(prev_delta) + 1e-12)
      rep.monotone = false;
    rep.levels.push_back(row);
    prev_cn = c.c_n;
    if (lvl >= 1) prev_delta = row.delta_cn;
  }
  rep.converged =
      levels >= 2 && std::abs(rep.levels.back().delta_cn) < 0.05;
  rep.time_axis_delta = 0.0;  // propagation is closed form in time
  return rep;
}

}  // namespace spr
