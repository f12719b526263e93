#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace latmaj {

/// Working precision for Gram-Schmidt data. The x87 extended format carries a
/// 15-bit exponent, so squared norms of 10d-bit Goldstein-Mayer rows stay
/// finite well past d = 200.
using Real = long double;

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when floating-point Gram-Schmidt data cannot be trusted
/// (non-finite values, broken invariants such as a non-decreasing potential).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nearest Real to x, truncated to 64 significant bits.
Real to_real(const Integer& x);

/// num / den rounded to 64 significant bits; den must be nonzero.
Real ratio_to_real(const Integer& num, const Integer& den);

Real to_real(const Rational& x);

/// Nearest integer, ties to even. x must be finite.
Integer round_half_even(Real x);

/// Nearest integer to num/den, ties to even. den must be positive.
Integer round_half_even(const Integer& num, const Integer& den);

/// Natural log of |x|; x must be nonzero.
double log_abs(const Integer& x);

}  // namespace latmaj
