#include "spr/expsum.hpp"

#include <algorithm>
#include <cmath>

#include "spr/errors.hpp"

namespace spr {

namespace {

constexpr double kSeriesThreshold = 0.25;
constexpr std::size_t kMaxTerms = 1 << 16;

// s^m without pow(); m stays single digit in practice.
double ipow(double s, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= s;
  return r;
}

}  // namespace

void ExpSum::add(std::complex<double> c, std::complex<double> z, int m) {
  if (c == std::complex<double>(0.0, 0.0)) return;
  if (terms_.size() >= kMaxTerms)
    throw SolverError("exponential-sum term budget exhausted");
  terms_.push_back({c, z, m});
}

void ExpSum::add(const ExpSum& other, std::complex<double> scale) {
  for (const ExpTerm& t : other.terms_) add(scale * t.c, t.z, t.m);
}

std::complex<double> ExpSum::eval(double s) const {
  std::complex<double> acc = 0.0;
  for (const ExpTerm& t : terms_)
    acc += t.c * ipow(s, t.m) * std::exp(t.z * s);
  return acc;
}

void ExpSum::compact() {
  if (terms_.empty()) return;
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpTerm& a, const ExpTerm& b) {
              if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
              if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
              return a.m < b.m;
            });
  std::vector<ExpTerm> merged;
  merged.reserve(terms_.size());
  for (const ExpTerm& t : terms_) {
    if (!merged.empty() && merged.back().z == t.z && merged.back().m == t.m)
      merged.back().c += t.c;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const ExpTerm& t) {
                                return t.c == std::complex<double>(0.0, 0.0);
                              }),
               merged.end());
  terms_ = std::move(merged);
}

namespace {

// J_m(d, s) = integral_0^s u^m e^{d u} du, as coefficients: u[j] multiplies
// s^j e^{d s}, v multiplies 1. Exact-branch helper, |d| s >= threshold.
void antiderivative_coeffs(std::complex<double> d, int m,
                           std::vector<std::complex<double>>& u,
                           std::complex<double>& v) {
  const std::complex<double> inv_d = 1.0 / d;
  u.assign(1, inv_d);
  v = -inv_d;
  for (int j = 1; j <= m; ++j) {
    // J_j = s^j e^{ds}/d - (j/d) J_{j-1}
    std::vector<std::complex<double>> nu(static_cast<std::size_t>(j) + 1);
    nu[static_cast<std::size_t>(j)] = inv_d;
    const std::complex<double> f = -static_cast<double>(j) * inv_d;
    for (std::size_t r = 0; r < u.size(); ++r) nu[r] = f * u[r];
    v *= f;
    u = std::move(nu);
  }
}

}  // namespace

ExpSum conv_exp(std::complex<double> z0, const ExpSum& f, double s_max) {
  ExpSum out;
  for (const ExpTerm& t : f.terms()) {
    const std::complex<double> d = t.z - z0;
    if (std::abs(d) * s_max < kSeriesThreshold) {
      // c e^{z0 s} sum_n d^n s^{m+n+1} / (n! (m+n+1)); terms fall at least
      // 4x per order, so the cutoff leaves < 1e-18 relative.
      std::complex<double> dn = 1.0;
      double nfact = 1.0;
      const double mag0 = 1.0 / (t.m + 1);
      for (int n = 0;; ++n) {
        if (n > 0) {
          dn *= d;
          nfact *= n;
        }
        const std::complex<double> coef = dn / (nfact * (t.m + n + 1));
        out.add(t.c * coef, z0, t.m + n + 1);
        const double bound =
            std::pow(kSeriesThreshold, n) / (nfact * (t.m + n + 1));
        if (bound < 1e-18 * mag0) break;
      }
    } else {
      std::vector<std::complex<double>> u;
      std::complex<double> v;
      antiderivative_coeffs(d, t.m, u, v);
      for (std::size_t j = 0; j < u.size(); ++j)
        out.add(t.c * u[j], t.z, static_cast<int>(j));
      out.add(t.c * v, z0, 0);
    }
  }
  out.compact();
  return out;
}

std::complex<double> conv_exp_at(std::complex<double> z0, const ExpSum& f,
                                 double s,
                                 const std::vector<std::complex<double>>& exp_zs,
                                 std::complex<double> exp_z0_s) {
  std::complex<double> acc = 0.0;
  const auto& ts = f.terms();
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const ExpTerm& t = ts[j];
    const std::complex<double> d = t.z - z0;
    if (std::abs(d) * s < kSeriesThreshold) {
      std::complex<double> dn = 1.0;
      double nfact = 1.0;
      std::complex<double> series = 0.0;
      const double sp = ipow(s, t.m + 1);
      double spow = sp;
      for (int n = 0;; ++n) {
        if (n > 0) {
          dn *= d;
          nfact *= n;
          spow *= s;
        }
        series += dn * spow / (nfact * (t.m + n + 1));
        const double bound =
            std::pow(kSeriesThreshold, n) / (nfact * (t.m + n + 1));
        if (bound < 1e-18 / (t.m + 1)) break;
      }
      acc += t.c * exp_z0_s * series;
    } else {
      // c e^{z0 s} J_m(d, s) with e^{d s} = exp_zs[j] / exp_z0_s; multiply
      // through by e^{z0 s} directly to avoid the quotient.
      const std::complex<double> inv_d = 1.0 / d;
      std::complex<double> jm = (exp_zs[j] - exp_z0_s) * inv_d;
      double spow = 1.0;
      for (int r = 1; r <= t.m; ++r) {
        spow *= s;
        jm = spow * exp_zs[j] * inv_d - static_cast<double>(r) * inv_d * jm;
      }
      acc += t.c * jm;
    }
  }
  return acc;
}

}  // namespace spr
