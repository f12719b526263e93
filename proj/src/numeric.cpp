#include "latmaj/numeric.hpp"

#include <cfenv>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace latmaj {

Real to_real(const Integer& x) {
  if (mpz_fits_slong_p(x.get_mpz_t())) {
    return static_cast<Real>(mpz_get_si(x.get_mpz_t()));
  }
  const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  const std::size_t shift = bits - 64;
  mpz_class top;
  mpz_abs(top.get_mpz_t(), x.get_mpz_t());
  mpz_tdiv_q_2exp(top.get_mpz_t(), top.get_mpz_t(), shift);
  static_assert(sizeof(mp_limb_t) == 8, "64-bit GMP limbs expected");
  const auto mantissa = static_cast<std::uint64_t>(mpz_getlimbn(top.get_mpz_t(), 0));
  const Real magnitude = std::ldexp(static_cast<Real>(mantissa), static_cast<int>(shift));
  return sgn(x) < 0 ? -magnitude : magnitude;
}

Real ratio_to_real(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("ratio_to_real: zero denominator");
  if (num == 0) return 0;
  if (mpz_fits_slong_p(num.get_mpz_t()) && mpz_fits_slong_p(den.get_mpz_t())) {
    return static_cast<Real>(mpz_get_si(num.get_mpz_t())) /
           static_cast<Real>(mpz_get_si(den.get_mpz_t()));
  }
  // Scale so the integer quotient carries at least 66 significant bits.
  const long shift = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 66;
  mpz_class q;
  if (shift < 0) {
    mpz_class scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
    mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_class scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  return std::ldexp(to_real(q), static_cast<int>(shift));
}

Real to_real(const Rational& x) { return ratio_to_real(x.get_num(), x.get_den()); }

Integer round_half_even(Real x) {
  if (!std::isfinite(x)) throw NumericalError("round_half_even: non-finite argument");
  if (std::fabs(x) < 9.0e18L) {
    // Default rounding mode is to-nearest, ties-to-even.
    return Integer(static_cast<long>(std::llrint(x)));
  }
  // |x| >= 2^63 > 2^(digits-1): x is already integral.
  int exponent = 0;
  const Real fraction = std::frexp(std::fabs(x), &exponent);
  const auto mantissa = static_cast<unsigned long>(std::ldexp(fraction, 64));
  Integer out(mantissa);
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent - 64));
  return x < 0 ? Integer(-out) : out;
}

Integer round_half_even(const Integer& num, const Integer& den) {
  if (sgn(den) <= 0) throw std::domain_error("round_half_even: denominator must be positive");
  Integer q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // num/den = q + rem/den with 0 <= rem < den.
  const Integer twice = 2 * rem;
  const int c = cmp(twice, den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  return q;
}

double log_abs(const Integer& x) {
  if (x == 0) throw std::domain_error("log_abs: zero argument");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

}  // namespace latmaj
