// Exact arithmetic in real quadratic fields Q(sqrt(D)) and periodic
// continued fractions.
//
// Every Kasner parameter that appears along a periodic heteroclinic chain is
// a quadratic irrational, so eigenvalues, exponent ratios and resonance
// relations can all be evaluated without rounding.
#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mixmaster::surd {

using BigInt = mpz_class;

class SurdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The number (p + q*sqrt(D)) / r.
///
/// Canonical form: r > 0, gcd(p, q, r) = 1, D square-free. Rationals have
/// q = 0 and D = 1, so two values are equal iff their components are.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(long value);  // NOLINT(google-explicit-constructor)

  /// Normalizing constructor. Square factors of D are moved into q.
  static QuadraticSurd make(BigInt p, BigInt q, BigInt r, BigInt D);
  static QuadraticSurd rational(BigInt numerator, BigInt denominator = 1);
  static QuadraticSurd sqrt_of(BigInt D);

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& r() const { return r_; }
  const BigInt& D() const { return D_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  int sign() const;

  QuadraticSurd conjugate() const;
  QuadraticSurd reciprocal() const;
  BigInt floor() const;

  /// Correctly rounded conversions.
  double to_double() const;
  long double to_long_double() const;

  /// "(p+q*sqrt(D))/r"; rationals print as "p" or "p/r".
  std::string str() const;

  QuadraticSurd operator-() const;
  QuadraticSurd& operator+=(const QuadraticSurd& rhs);
  QuadraticSurd& operator-=(const QuadraticSurd& rhs);
  QuadraticSurd& operator*=(const QuadraticSurd& rhs);
  QuadraticSurd& operator/=(const QuadraticSurd& rhs);

  friend QuadraticSurd operator+(QuadraticSurd a, const QuadraticSurd& b) { return a += b; }
  friend QuadraticSurd operator-(QuadraticSurd a, const QuadraticSurd& b) { return a -= b; }
  friend QuadraticSurd operator*(QuadraticSurd a, const QuadraticSurd& b) { return a *= b; }
  friend QuadraticSurd operator/(QuadraticSurd a, const QuadraticSurd& b) { return a /= b; }

  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b);
  friend std::strong_ordering operator<=>(const QuadraticSurd& a, const QuadraticSurd& b);

 private:
  template <class Float>
  Float to_float() const;
  void normalize();

  BigInt p_ = 0;
  BigInt q_ = 0;
  BigInt r_ = 1;
  BigInt D_ = 1;
};

QuadraticSurd surd_add(const QuadraticSurd& a, const QuadraticSurd& b);
QuadraticSurd surd_sub(const QuadraticSurd& a, const QuadraticSurd& b);
QuadraticSurd surd_mul(const QuadraticSurd& a, const QuadraticSurd& b);
QuadraticSurd surd_div(const QuadraticSurd& a, const QuadraticSurd& b);
double surd_to_float(const QuadraticSurd& a);

/// c0 + c1*x + c2*x^2 with c2 > 0 and gcd(c0, c1, c2) = 1.
struct MinimalPolynomial {
  BigInt c0, c1, c2;

  QuadraticSurd evaluate(const QuadraticSurd& x) const;
  friend bool operator==(const MinimalPolynomial&, const MinimalPolynomial&) = default;
};

/// Throws SurdError for rational input, which has no degree-2 minimal
/// polynomial.
MinimalPolynomial minimal_polynomial(const QuadraticSurd& a);

/// [prefix; period, period, ...]. Digits are positive.
struct PeriodicCF {
  std::vector<std::int64_t> prefix;
  std::vector<std::int64_t> period;

  void validate() const;
  friend bool operator==(const PeriodicCF&, const PeriodicCF&) = default;
};

QuadraticSurd cf_to_surd(const PeriodicCF& cf);

/// Exact expansion of an irrational surd > 0 into prefix and minimal period.
PeriodicCF surd_to_cf(const QuadraticSurd& a);

/// First n continued-fraction digits of a positive value (stops early for
/// rationals).
std::vector<BigInt> cf_digits(const QuadraticSurd& a, std::size_t n);

/// Accepts "[a1,a2;b1,b2]" (prefix;period); the prefix may be empty.
PeriodicCF parse_cf(std::string_view text);
std::string format_cf(const PeriodicCF& cf);

/// Accepts the CF syntax, "(p+q*sqrt(D))/r", an integer, "a/b" or a
/// terminating decimal such as "3.5" (read as the exact rational).
QuadraticSurd parse_surd(std::string_view text);

}  // namespace mixmaster::surd
