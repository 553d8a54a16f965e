// Exact scalar arithmetic: arbitrary-precision rationals (GMP) and Gaussian
// rationals a + b*i built on top of them.  Every computation in this library
// runs over these scalars; no floating point is used outside of test
// oracles.

#pragma once

#include <gmpxx.h>

#include <string>

namespace confquant {

using Rational = mpq_class;

// num/den as a canonical rational (den != 0).
Rational make_rational(long num, long den = 1);

// Canonical text form: "p/q" in lowest terms with q > 0, or just "p" when
// the value is an integer.
std::string rat_str(const Rational& r);

// Parses "p", "-p" or "p/q" (optional sign on either part, no whitespace).
// Throws ParseError for malformed text or a zero denominator.  The result
// is canonicalized, so rat_str(rat_parse(s)) is a normal form.
Rational rat_parse(const std::string& s);

// A Gaussian rational re + im*i.  Supports exact field arithmetic; division
// by zero throws std::domain_error.
class ExactScalar {
 public:
  ExactScalar() : re_(0), im_(0) {}
  ExactScalar(long v) : re_(v), im_(0) {}                      // NOLINT
  ExactScalar(const Rational& r) : re_(r), im_(0) {}           // NOLINT
  ExactScalar(Rational re, Rational im)
      : re_(std::move(re)), im_(std::move(im)) {}

  static ExactScalar i() { return ExactScalar(Rational(0), Rational(1)); }
  // i^k for any integer k (k may be negative).
  static ExactScalar i_pow(long k);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  ExactScalar conj() const { return ExactScalar(re_, Rational(-im_)); }

  ExactScalar operator-() const {
    return ExactScalar(Rational(-re_), Rational(-im_));
  }
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);  // throws on zero divisor

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) {
    a += b;
    return a;
  }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) {
    a -= b;
    return a;
  }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) {
    a *= b;
    return a;
  }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) {
    a /= b;
    return a;
  }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) {
    return !(a == b);
  }

  // Human-readable form, e.g. "3/2", "i", "1-2i", "0".
  std::string str() const;

 private:
  Rational re_, im_;
};

}  // namespace confquant
