#include "spr/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>

namespace spr {

namespace {

struct GslInit {
  GslInit() { gsl_set_error_handler_off(); }
};
const GslInit gsl_init_once;

constexpr size_t kWorkspaceSize = 20000;

struct Workspace {
  gsl_integration_workspace* w;
  Workspace() : w(gsl_integration_workspace_alloc(kWorkspaceSize)) {}
  ~Workspace() { gsl_integration_workspace_free(w); }
};

double trampoline(double x, void* params) {
  return (*static_cast<const RealFn*>(params))(x);
}

QuadResult run(int (*driver)(gsl_function*, const double*, double, double,
                             gsl_integration_workspace*, double*, double*),
               const RealFn& f, const double* limits, double epsabs, double epsrel) {
  Workspace ws;
  gsl_function gf;
  gf.function = &trampoline;
  gf.params = const_cast<RealFn*>(&f);
  double value = 0.0, abserr = 0.0;
  const int status = driver(&gf, limits, epsabs, epsrel, ws.w, &value, &abserr);
  QuadResult r{value, abserr, status == GSL_SUCCESS};
  // GSL_EROUND with an error estimate already inside the request is benign.
  if (!r.converged && abserr <= std::max(epsabs, std::abs(value) * epsrel) * 10.0)
    r.converged = true;
  return r;
}

int drive_qag(gsl_function* gf, const double* lim, double ea, double er,
              gsl_integration_workspace* w, double* v, double* e) {
  return gsl_integration_qag(gf, lim[0], lim[1], ea, er, kWorkspaceSize,
                             GSL_INTEG_GAUSS61, w, v, e);
}

int drive_qagiu(gsl_function* gf, const double* lim, double ea, double er,
                gsl_integration_workspace* w, double* v, double* e) {
  return gsl_integration_qagiu(gf, lim[0], ea, er, kWorkspaceSize, w, v, e);
}

int drive_qagi(gsl_function* gf, const double*, double ea, double er,
               gsl_integration_workspace* w, double* v, double* e) {
  return gsl_integration_qagi(gf, ea, er, kWorkspaceSize, w, v, e);
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double epsabs, double epsrel) {
  const double lim[2] = {a, b};
  return run(&drive_qag, f, lim, epsabs, epsrel);
}

QuadResult integrate_upper(const RealFn& f, double a, double epsabs, double epsrel) {
  const double lim[2] = {a, 0.0};
  return run(&drive_qagiu, f, lim, epsabs, epsrel);
}

QuadResult integrate_line(const RealFn& f, double epsabs, double epsrel) {
  return run(&drive_qagi, f, nullptr, epsabs, epsrel);
}

namespace {

CQuadResult combine(const QuadResult& re, const QuadResult& im) {
  CQuadResult c;
  c.value = {re.value, im.value};
  c.abserr = re.abserr + im.abserr;
  c.converged = re.converged && im.converged;
  return c;
}

}  // namespace

CQuadResult integrate_c(const ComplexFn& f, double a, double b,
                        double epsabs, double epsrel) {
  const QuadResult re = integrate([&](double x) { return f(x).real(); }, a, b, epsabs, epsrel);
  const QuadResult im = integrate([&](double x) { return f(x).imag(); }, a, b, epsabs, epsrel);
  return combine(re, im);
}

CQuadResult integrate_line_c(const ComplexFn& f, double epsabs, double epsrel) {
  const QuadResult re = integrate_line([&](double x) { return f(x).real(); }, epsabs, epsrel);
  const QuadResult im = integrate_line([&](double x) { return f(x).imag(); }, epsabs, epsrel);
  return combine(re, im);
}

QuadResult integrate_osc(const RealFn& f, double a, double b, double omega,
                         bool sine, double epsabs, double epsrel) {
  if (omega == 0.0 && sine) return QuadResult{0.0, 0.0, true};
  Workspace ws;
  gsl_integration_qawo_table* table = gsl_integration_qawo_table_alloc(
      omega, b - a, sine ? GSL_INTEG_SINE : GSL_INTEG_COSINE, 60);
  gsl_function gf;
  gf.function = &trampoline;
  gf.params = const_cast<RealFn*>(&f);
  double value = 0.0, abserr = 0.0;
  const int status =
      gsl_integration_qawo(&gf, a, epsabs, epsrel, kWorkspaceSize, ws.w, table, &value, &abserr);
  gsl_integration_qawo_table_free(table);
  QuadResult r{value, abserr, status == GSL_SUCCESS};
  if (!r.converged && abserr <= std::max(epsabs, std::abs(value) * epsrel) * 10.0)
    r.converged = true;
  return r;
}

CQuadResult integrate_osc_c(const ComplexFn& f, double a, double b, double omega,
                            double epsabs, double epsrel) {
  const RealFn fre = [&](double x) { return f(x).real(); };
  const RealFn fim = [&](double x) { return f(x).imag(); };
  const QuadResult rc = integrate_osc(fre, a, b, omega, false, epsabs, epsrel);
  const QuadResult rs = integrate_osc(fre, a, b, omega, true, epsabs, epsrel);
  const QuadResult ic = integrate_osc(fim, a, b, omega, false, epsabs, epsrel);
  const QuadResult is = integrate_osc(fim, a, b, omega, true, epsabs, epsrel);
  CQuadResult out;
  // f e^{-i omega x} = (Re f cos + Im f sin) + i (Im f cos - Re f sin)
  out.value = {rc.value + is.value, ic.value - rs.value};
  out.abserr = rc.abserr + rs.abserr + ic.abserr + is.abserr;
  out.converged = rc.converged && rs.converged && ic.converged && is.converged;
  return out;
}

const GLRule& gauss_legendre_rule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GLRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto rule = std::make_unique<GLRule>();
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    rule->x.resize(n);
    rule->w.resize(n);
    for (int i = 0; i < n; ++i)
      gsl_integration_glfixed_point(-1.0, 1.0, i, &rule->x[i], &rule->w[i], t);
    gsl_integration_glfixed_table_free(t);
    it = cache.emplace(n, std::move(rule)).first;
  }
  return *it->second;
}

}  // namespace spr
