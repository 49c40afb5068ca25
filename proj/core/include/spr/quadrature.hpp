#ifndef SPR_QUADRATURE_HPP
#define SPR_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace spr {

// Thin wrappers over the GSL adaptive integrators. Used by the spectral
// checks and the slower reference paths; the production solvers are closed
// form and never touch these.

struct QuadResult {
  double value = 0.0;
  double abserr = 0.0;
  bool converged = true;
};

struct CQuadResult {
  std::complex<double> value;
  double abserr = 0.0;
  bool converged = true;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

// Finite interval (QAG, 61-point rule).
QuadResult integrate(const RealFn& f, double a, double b,
                     double epsabs = 1e-12, double epsrel = 1e-10);
// Semi-infinite [a, inf).
QuadResult integrate_upper(const RealFn& f, double a,
                           double epsabs = 1e-12, double epsrel = 1e-10);
// Full real line.
QuadResult integrate_line(const RealFn& f,
                          double epsabs = 1e-12, double epsrel = 1e-10);

CQuadResult integrate_c(const ComplexFn& f, double a, double b,
                        double epsabs = 1e-12, double epsrel = 1e-10);
CQuadResult integrate_line_c(const ComplexFn& f,
                             double epsabs = 1e-12, double epsrel = 1e-10);

// QAWO: integral of f(x) * cos(omega x) (or sin). Stays cheap when
// omega*(b-a) is enormous, unlike resolving every cycle with QAG.
QuadResult integrate_osc(const RealFn& f, double a, double b, double omega,
                         bool sine, double epsabs = 1e-12, double epsrel = 1e-10);
// integral of f(x) e^{-i omega x} dx over [a, b] via four QAWO passes.
CQuadResult integrate_osc_c(const ComplexFn& f, double a, double b, double omega,
                            double epsabs = 1e-12, double epsrel = 1e-10);

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GLRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GLRule& gauss_legendre_rule(int n);

}  // namespace spr

#endif
