#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "spr/errors.hpp"
#include "spr/expsum.hpp"
#include "spr/quadrature.hpp"

using namespace spr;

namespace {

using C = std::complex<double>;
const C I(0.0, 1.0);

// Quadrature reference for the convolution integral_0^s e^{z0 (s-u)} f(u) du.
C conv_oracle(C z0, const ExpSum& f, double s) {
  const CQuadResult r = integrate_c(
      [&](double u) { return std::exp(z0 * (s - u)) * f.eval(u); }, 0.0, s,
      1e-13, 1e-11);
  REQUIRE(r.converged);
  return r.value;
}

ExpSum mixed_sum() {
  ExpSum f;
  f.add(C(1.0, 0.5), C(-0.10, 1.3));
  f.add(C(0.3, -0.2), C(-0.05, -0.7), 1);
  f.add(C(0.0, 0.2), C(-0.40, 0.0), 2);
  return f;
}

}  // namespace

TEST_CASE("eval matches the termwise definition") {
  ExpSum f = mixed_sum();
  for (double s : {0.0, 0.37, 2.0}) {
    const C direct = C(1.0, 0.5) * std::exp(C(-0.10, 1.3) * s) +
                     C(0.3, -0.2) * s * std::exp(C(-0.05, -0.7) * s) +
                     C(0.0, 0.2) * s * s * std::exp(C(-0.40, 0.0) * s);
    CHECK(std::abs(f.eval(s) - direct) <= 1e-15 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("convolution against quadrature, mixed rates and powers") {
  const ExpSum f = mixed_sum();
  const C z0(-0.3, -2.1);
  const double s_max = 5.0;
  const ExpSum g = conv_exp(z0, f, s_max);
  for (double s : {0.3, 1.7, 5.0}) {
    const C want = conv_oracle(z0, f, s);
    CHECK(std::abs(g.eval(s) - want) <= 1e-10 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("series and pole branches agree across the threshold") {
  const C z0(-0.2, 0.9);
  const double s_max = 4.0;
  // |z - z0| * s_max straddles the 0.25 switch point
  for (double gap : {0.2499 / s_max, 0.2501 / s_max, 0.06 / s_max}) {
    ExpSum f;
    f.add(C(0.8, -0.3), z0 + C(0.0, gap), 1);
    const ExpSum g = conv_exp(z0, f, s_max);
    for (double s : {0.9, 4.0}) {
      const C want = conv_oracle(z0, f, s);
      CHECK(std::abs(g.eval(s) - want) <= 1e-11 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("exact rate collision raises the polynomial degree") {
  const C z0(-0.35, 1.1);
  ExpSum f;
  f.add(C(2.0, 0.0), z0);     // -> 2 s e^{z0 s}
  f.add(C(0.0, 3.0), z0, 2);  // -> 3i s^3/3 e^{z0 s}
  const ExpSum g = conv_exp(z0, f, 6.0);
  for (double s : {0.5, 3.0, 6.0}) {
    const C want = (2.0 * s + I * s * s * s) * std::exp(z0 * s);
    CHECK(std::abs(g.eval(s) - want) <= 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("pointwise convolution matches the symbolic result") {
  ExpSum f = mixed_sum();
  f.add(C(0.4, 0.0), C(-0.3, -2.1) + C(0.0, 0.01));  // near-resonant term
  const C z0(-0.3, -2.1);
  const double s_max = 5.0;
  const ExpSum g = conv_exp(z0, f, s_max);
  for (double s : {0.2, 2.9, 5.0}) {
    std::vector<C> exp_zs;
    exp_zs.reserve(f.size());
    for (const ExpTerm& t : f.terms()) exp_zs.push_back(std::exp(t.z * s));
    const C at = conv_exp_at(z0, f, s, exp_zs, std::exp(z0 * s));
    const C sym = g.eval(s);
    CHECK(std::abs(at - sym) <= 1e-12 * (1.0 + std::abs(sym)));
  }
}

TEST_CASE("fast oscillation relative to the pole stays accurate") {
  ExpSum f;
  f.add(C(1.0, -0.4), C(-0.2, 80.0));
  const C z0(-0.5, 0.3);
  const double s_max = 5.0;
  const ExpSum g = conv_exp(z0, f, s_max);
  for (double s : {1.0, 5.0}) {
    const C want = conv_oracle(z0, f, s);
    CHECK(std::abs(g.eval(s) - want) <= 1e-10 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("compact merges equal keys and drops cancelled terms") {
  ExpSum f;
  const C z(-0.1, 0.4);
  f.add(C(1.0, 1.0), z, 1);
  f.add(C(0.5, -2.0), z, 1);
  f.add(C(2.0, 0.0), z, 0);
  f.add(C(-2.0, 0.0), z, 0);
  const C before = f.eval(1.3);
  f.compact();
  CHECK(f.size() == 1);
  CHECK(f.terms()[0].m == 1);
  CHECK(f.terms()[0].c == C(1.5, -1.0));
  CHECK(std::abs(f.eval(1.3) - before) <= 1e-15 * (1.0 + std::abs(before)));
}

TEST_CASE("scaled accumulation of another sum") {
  ExpSum a = mixed_sum();
  ExpSum b;
  b.add(a, C(0.0, 2.0));
  b.add(a, C(1.0, 0.0));
  const C want = C(1.0, 2.0) * a.eval(0.8);
  CHECK(std::abs(b.eval(0.8) - want) <= 1e-15 * (1.0 + std::abs(want)));
}

TEST_CASE("term budget overflow is a solver error") {
  ExpSum f;
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < (1 << 17); ++i) {
          f.add(C(1.0, 0.0), C(-1e-9 * (i + 1), 0.0));
        }
      }(),
      SolverError);
}
