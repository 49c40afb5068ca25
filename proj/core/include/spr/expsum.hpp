#ifndef SPR_EXPSUM_HPP
#define SPR_EXPSUM_HPP

#include <complex>
#include <vector>

namespace spr {

// Closed-form signal c * s^m * e^{z s}. Every amplitude the transport solver
// produces is a finite sum of these, because the hierarchy is linear with
// exponential drives.
struct ExpTerm {
  std::complex<double> c;
  std::complex<double> z;
  int m = 0;
};

class ExpSum {
 public:
  ExpSum() = default;

  void add(std::complex<double> c, std::complex<double> z, int m = 0);
  void add(const ExpSum& other, std::complex<double> scale = 1.0);

  std::complex<double> eval(double s) const;

  // Merge terms with identical (z, m) and drop exact zeros. Rates are built
  // once and propagated verbatim, so bitwise equality is the right key.
  void compact();

  const std::vector<ExpTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  void clear() { terms_.clear(); }

 private:
  std::vector<ExpTerm> terms_;
};

// integral_0^s e^{z0 (s - u)} f(u) du, again an ExpSum in s, valid on
// [0, s_max]. For a source term with rate z, the branch is chosen on
// |z - z0| * s_max: below 0.25 a power series in (z - z0) keeps full
// precision where the exact antiderivative would cancel; above it the
// recursive antiderivative is used (worst-case relative error
// ~eps / 0.25^{m+1}, fine for the small m that occur here).
ExpSum conv_exp(std::complex<double> z0, const ExpSum& f, double s_max);

// Same integral evaluated at one point s only, without building the result
// sum. exp_zs[j] must hold e^{terms[j].z * s} and exp_z0_s must hold
// e^{z0 * s}; the caller precomputes both, which is what makes the
// two-photon pair assembly free of transcendental calls per (k, k') pair.
std::complex<double> conv_exp_at(std::complex<double> z0, const ExpSum& f,
                                 double s,
                                 const std::vector<std::complex<double>>& exp_zs,
                                 std::complex<double> exp_z0_s);

}  // namespace spr

#endif
