#include "spr/transport_rk.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "spr/errors.hpp"
#include "spr/resonances.hpp"
#include "spr/units.hpp"

namespace spr {
namespace {

using C = std::complex<double>;
constexpr C kJ{0.0, 1.0};

struct RkContext {
  Mat2 m1;  // frame one-excitation block
  Mat2 m2;  // frame two-excitation block
  std::vector<double> delta;
  std::vector<double> fk;
  C drive;  // -f_ph * c_xi
  double h = 0.0;
  double lambda = 0.0;
  double Lambda = 0.0;
  double em_L = 0.0;  // Lambda in the guide sources, 0 unless requested
  bool excited = false;
  bool probe = true;
};

C cat(const double* y, std::size_t i) { return {y[2 * i], y[2 * i + 1]}; }

void put(double* dy, std::size_t i, C v) {
  dy[2 * i] = v.real();
  dy[2 * i + 1] = v.imag();
}

// Layout, complex slots:
//   ground:  [a, sigma, b1_0..b1_{n-1}, b2_0..b2_{n-1}]
//   excited: [a_phi, s_phi, a2, sa,
//             b_phi_0.., xI_0.., yI_0.., xII_0.., yII_0..]
int rk_rhs(double s, const double* y, double* dy, void* params) {
  const RkContext& cx = *static_cast<const RkContext*>(params);
  const std::size_t n = cx.delta.size();
  const double env = std::exp(-cx.h * s);

  if (!cx.excited) {
    const C a = cat(y, 0), sg = cat(y, 1);
    C da = -kJ * (cx.m1[0][0] * a + cx.m1[0][1] * sg);
    C ds = -kJ * (cx.m1[1][0] * a + cx.m1[1][1] * sg);
    if (cx.probe) {
      da += cx.drive * env;
      ds += cx.Lambda * cx.drive * env;
    }
    put(dy, 0, da);
    put(dy, 1, ds);
    const C src = a + cx.em_L * sg;
    for (std::size_t i = 0; i < n; ++i) {
      put(dy, 2 + i, -kJ * cx.delta[i] * cat(y, 2 + i) + cx.fk[i] * src);
      put(dy, 2 + n + i,
          -kJ * cx.delta[i] * cat(y, 2 + n + i) + cx.fk[i] * src);
    }
    return GSL_SUCCESS;
  }

  const C aphi = cat(y, 0), sphi = cat(y, 1);
  const C a2 = cat(y, 2), sa = cat(y, 3);
  put(dy, 0, -kJ * (cx.m1[0][0] * aphi + cx.m1[0][1] * sphi));
  put(dy, 1, -kJ * (cx.m1[1][0] * aphi + cx.m1[1][1] * sphi));
  const C xi_env = cx.probe ? cx.drive * env : C(0.0, 0.0);
  put(dy, 2,
      -kJ * (cx.m2[0][0] * a2 + cx.m2[0][1] * sa) + 2.0 * xi_env * aphi);
  put(dy, 3,
      -kJ * (cx.m2[1][0] * a2 + cx.m2[1][1] * sa) +
          xi_env * (sphi + cx.Lambda * aphi));
  const C srcphi = aphi + cx.em_L * sphi;
  const std::size_t ob = 4, ox1 = 4 + n, oy1 = 4 + 2 * n, ox2 = 4 + 3 * n,
                    oy2 = 4 + 4 * n;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = cx.delta[i];
    const double f = cx.fk[i];
    const C bphi = cat(y, ob + i);
    put(dy, ob + i, -kJ * d * bphi + f * srcphi);
    const C fb = xi_env * bphi;
    const C dx_common = f * a2 + cx.em_L * f * sa + fb;
    const C dy_common = f * sa + cx.Lambda * fb;
    const C x1 = cat(y, ox1 + i), y1 = cat(y, oy1 + i);
    const C x2 = cat(y, ox2 + i), y2 = cat(y, oy2 + i);
    put(dy, ox1 + i,
        -kJ * ((d + cx.m1[0][0]) * x1 + cx.m1[0][1] * y1) + dx_common);
    put(dy, oy1 + i,
        -kJ * (cx.m1[1][0] * x1 + (d + cx.m1[1][1]) * y1) + dy_common);
    put(dy, ox2 + i,
        -kJ * ((d + cx.m1[0][0]) * x2 + cx.m1[0][1] * y2) + dx_common);
    put(dy, oy2 + i,
        -kJ * (cx.m1[1][0] * x2 + (d + cx.m1[1][1]) * y2) + dy_common);
  }
  return GSL_SUCCESS;
}

RkContext make_context(const SystemParams& p, const PulseParams& pulse,
                       const KGrid& grid, const SolveOptions& opt,
                       bool excited) {
  if (pulse.t0 != 0.0)
    throw InvalidInput("the cross-check integrator requires t0 == 0");
  p.validate();
  pulse.validate();
  RkContext cx;
  const GuideBath bath =
      opt.fk_sqrt ? GuideBath::omega_weighted : GuideBath::flat;
  const DerivedQuantities d = derive_couplings(p);
  const ComplexResonances res = resonances(p, bath);
  cx.m1 = block_matrix_1(p, res, bath);
  cx.m2 = block_matrix_2(p, res);
  for (int i = 0; i < 2; ++i) {
    cx.m1[i][i] -= pulse.omega_ph;
    cx.m2[i][i] -= 2.0 * pulse.omega_ph;
  }
  cx.delta = grid.delta;
  double f_ph = std::sqrt(p.kappa / (2.0 * two_pi));
  if (opt.fk_sqrt) f_ph *= std::sqrt(pulse.omega_ph / p.omega_r);
  cx.fk.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cx.fk[i] =
        opt.fk_sqrt
            ? f_ph * std::sqrt((pulse.omega_ph + grid.delta[i]) /
                               pulse.omega_ph)
            : f_ph;
  }
  cx.h = 0.5 / pulse.t_ph;
  const C c_xi =
      -kJ * two_pi *
      std::polar(1.0 / std::sqrt(two_pi * pulse.t_ph), 0.0);
  cx.drive = -f_ph * c_xi;
  cx.lambda = d.lambda;
  cx.Lambda = d.Lambda_bs;
  cx.em_L = opt.direct_qubit_emission ? d.Lambda_bs : 0.0;
  cx.excited = excited;
  cx.probe = opt.probe;
  return cx;
}

void integrate(RkContext& cx, std::vector<double>& y, double t, double rtol) {
  gsl_odeiv2_system sys{rk_rhs, nullptr, y.size(), &cx};
  gsl_odeiv2_driver* drv = gsl_odeiv2_driver_alloc_y_new(
      &sys, gsl_odeiv2_step_rkf45, t * 1e-6, 1e-14, rtol);
  double s = 0.0;
  const int status = gsl_odeiv2_driver_apply(drv, &s, t, y.data());
  gsl_odeiv2_driver_free(drv);
  if (status != GSL_SUCCESS)
    throw SolverError("adaptive integrator failed to reach the target time");
}

C xi_spec(const PulseParams& pulse, double delta) {
  return std::polar(1.0 / std::sqrt(two_pi * pulse.t_ph), 0.0) /
         C(delta, 0.5 / pulse.t_ph);
}

}  // namespace

SingleExcitationState ground_state_rk(const SystemParams& p,
                                      const PulseParams& pulse,
                                      const KGrid& grid, double t, double rtol,
                                      const SolveOptions& opt) {
  RkContext cx = make_context(p, pulse, grid, opt, false);
  const std::size_t n = grid.size();
  std::vector<double> y(2 * (2 + 2 * n), 0.0);
  if (opt.probe) {
    for (std::size_t i = 0; i < n; ++i)
      put(y.data(), 2 + i, xi_spec(pulse, grid.delta[i]));
  }
  integrate(cx, y, t, rtol);

  SingleExcitationState st;
  st.t = t;
  const C lab = std::polar(1.0, -pulse.omega_ph * t);
  st.a = cat(y.data(), 0) * lab;
  st.sigma = cat(y.data(), 1) * lab;
  st.b_guide1.resize(n);
  st.b_guide2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.b_guide1[i] = cat(y.data(), 2 + i) * lab;
    st.b_guide2[i] = cat(y.data(), 2 + n + i) * lab;
  }
  return st;
}

TwoExcitationState excited_state_rk(const SystemParams& p,
                                    const PulseParams& pulse,
                                    const KGrid& grid, double t, double rtol,
                                    const SolveOptions& opt) {
  RkContext cx = make_context(p, pulse, grid, opt, true);
  const std::size_t n = grid.size();
  const std::size_t ob = 4, ox1 = 4 + n, oy1 = 4 + 2 * n, ox2 = 4 + 3 * n,
                    oy2 = 4 + 4 * n;
  std::vector<double> y(2 * (4 + 5 * n), 0.0);
  const DerivedQuantities d = derive_couplings(p);
  put(y.data(), 0, C(d.lambda, 0.0));
  put(y.data(), 1, C(1.0, 0.0));
  if (opt.probe) {
    for (std::size_t i = 0; i < n; ++i) {
      const C xi = xi_spec(pulse, grid.delta[i]);
      put(y.data(), ox1 + i, d.lambda * xi);
      put(y.data(), oy1 + i, xi);
    }
  }
  integrate(cx, y, t, rtol);

  TwoExcitationState st;
  st.t = t;
  const C lab1 = std::polar(1.0, -pulse.omega_ph * t);
  const C lab2 = lab1 * lab1;
  st.a_phi = cat(y.data(), 0) * lab1;
  st.sigma_phi = cat(y.data(), 1) * lab1;
  st.a2 = cat(y.data(), 2) * lab2;
  st.sa = cat(y.data(), 3) * lab2;
  st.b_phi.resize(n);
  st.ba_guide1.resize(n);
  st.bs_guide1.resize(n);
  st.ba_guide2.resize(n);
  st.bs_guide2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.b_phi[i] = cat(y.data(), ob + i) * lab1;
    st.ba_guide1[i] = cat(y.data(), ox1 + i) * lab2;
    st.bs_guide1[i] = cat(y.data(), oy1 + i) * lab2;
    st.ba_guide2[i] = cat(y.data(), ox2 + i) * lab2;
    st.bs_guide2[i] = cat(y.data(), oy2 + i) * lab2;
  }
  return st;
}

}  // namespace spr
