#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace covlie {

using Rational = mpq_class;
using BigInt = mpz_class;

unsigned euler_phi(unsigned n);

/// Coefficients of the n-th cyclotomic polynomial, index = degree.
/// Monic with integer coefficients, degree phi(n).
std::vector<BigInt> cyclotomic_polynomial(unsigned n);

/// An exact element of the cyclotomic field Q(zeta_M), stored in the power
/// basis 1, z, ..., z^(phi(M)-1) of Q[z]/(Phi_M(z)). The representation is
/// canonical for a fixed order M; elements of different orders compare equal
/// when their images in Q(zeta_lcm) have the same coefficient vector.
class CycNumber {
 public:
  CycNumber();  // zero of order 1

  static CycNumber from_rational(const Rational& r);
  static CycNumber from_int(long n);
  static CycNumber zero(unsigned order = 1);
  static CycNumber one();
  /// zeta_order^exponent; the exponent may be any integer.
  static CycNumber root_of_unity(unsigned order, long exponent);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational rational_value() const;

  /// Image in Q(zeta_new_order); order() must divide new_order.
  CycNumber embedded(unsigned new_order) const;

  CycNumber operator-() const;
  CycNumber& operator+=(const CycNumber& rhs);
  CycNumber& operator-=(const CycNumber& rhs);
  CycNumber& operator*=(const CycNumber& rhs);
  CycNumber& operator/=(const CycNumber& rhs);

  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
  friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }

  bool operator==(const CycNumber& rhs) const;
  bool operator!=(const CycNumber& rhs) const { return !(*this == rhs); }

  /// Multiplicative inverse; throws DivisionByZeroError on zero.
  CycNumber inverse() const;
  /// Integer power, negative exponents via the inverse.
  CycNumber pow(long e) const;

  /// Textual form "c0 + c1*z + c2*z^2 + ..." with z = zeta_order.
  std::string to_string() const;
  /// Parses the same grammar; the ambient order must be supplied.
  static CycNumber parse(const std::string& text, unsigned order);

 private:
  CycNumber(unsigned order, std::vector<Rational> coeffs);

  unsigned order_;
  std::vector<Rational> coeffs_;  // length phi(order_)
};

/// The q-integer [n]_q = (q^n - q^-n) / (q - q^-1), with the limit
/// conventions [n]_1 = n and [n]_(-1) = n * (-1)^(n-1). q must be nonzero.
CycNumber q_integer(long n, const CycNumber& q);

}  // namespace covlie
