#include "confquant/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "confquant/errors.hpp"

namespace confquant {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rational& r) {
  // mpq_class values are kept canonicalized by every path that creates
  // them; get_str already renders "p/q" or "p" in lowest terms with a
  // positive denominator.
  return r.get_str();
}

namespace {

// Accepts an optional sign followed by one or more digits.
bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  return true;
}

}  // namespace

Rational rat_parse(const std::string& s) {
  const std::size_t slash = s.find('/');
  std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  if (!valid_integer_token(num) || !valid_integer_token(den)) {
    throw ParseError("rat_parse: malformed rational '" + s + "'");
  }
  // mpz_class does not accept a leading '+'.
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) {
    throw ParseError("rat_parse: zero denominator in '" + s + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

ExactScalar ExactScalar::i_pow(long k) {
  long m = k % 4;
  if (m < 0) m += 4;
  switch (m) {
    case 0:
      return ExactScalar(1);
    case 1:
      return ExactScalar::i();
    case 2:
      return ExactScalar(-1);
    default:
      return -ExactScalar::i();
  }
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = re;
  im_ = im;
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  if (norm == 0) throw std::domain_error("ExactScalar: division by zero");
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = re;
  im_ = im;
  return *this;
}

std::string ExactScalar::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (re_ != 0) out += rat_str(re_);
  if (im_ != 0) {
    if (im_ > 0 && !out.empty()) out += "+";
    if (im_ == -1) {
      out += "-";
    } else if (im_ != 1) {
      out += rat_str(im_);
      out += "*";
    }
    out += "i";
  }
  return out;
}

}  // namespace confquant
