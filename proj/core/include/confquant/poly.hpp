// Polynomials in n position variables x^1..x^n and n momentum variables
// xi_1..xi_n with Gaussian-rational coefficients.  These model polynomial
// symbols on T*R^n: the xi-degree is the symbol order, and the coefficient
// of each xi-monomial is a polynomial in x.
//
// Terms are stored in a canonical map keyed by exponent vectors and ordered
// graded-lexicographically (total degree first, then lexicographic on the
// concatenation of x- and xi-exponents), so equality, printing and
// serialization are all canonical.  Zero coefficients are never stored.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "confquant/rational.hpp"

namespace confquant {

struct Monomial {
  std::vector<int> x;   // exponents of x^1..x^n
  std::vector<int> xi;  // exponents of xi_1..xi_n

  int degree() const;
  int x_degree() const;
  int xi_degree() const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.x == b.x && a.xi == b.xi;
  }
};

// Graded-lexicographic order: by total degree, then lexicographically on
// the concatenated exponent vector (x first, then xi).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, ExactScalar, MonomialOrder>;

  // The zero polynomial in dimension n (n >= 1).
  explicit Poly(int n);

  static Poly constant(int n, const ExactScalar& c);
  static Poly var_x(int n, int i);   // x^i, 0-based i
  static Poly var_xi(int n, int i);  // xi_i, 0-based i

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_x_only() const;  // no xi dependence
  int degree() const;      // total degree, -1 for the zero polynomial
  int x_degree() const;
  int xi_degree() const;

  const TermMap& terms() const { return terms_; }

  // Adds c * x^mx * xi^mxi; merges with an existing term and drops zeros.
  void add_term(const Monomial& m, const ExactScalar& c);
  // Coefficient of an exponent pair (zero if absent).
  ExactScalar coeff(const Monomial& m) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) {
    a += b;
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    a -= b;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const ExactScalar& c, Poly p);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly partial_x(int i) const;   // d/dx^i
  Poly partial_xi(int i) const;  // d/dxi_i

  // Complex conjugation of every coefficient.
  Poly conj() const;

  // The part of the polynomial of xi-degree exactly d.
  Poly xi_homogeneous_part(int d) const;

  // Exact evaluation at a rational point (xs, xis), both of length n.
  ExactScalar eval(const std::vector<Rational>& xs,
                   const std::vector<Rational>& xis) const;

  // Human-readable form in canonical term order, e.g. "2*x1^2*xi2 - xi1".
  std::string str() const;

 private:
  void check_same_space(const Poly& o) const;

  int n_;
  TermMap terms_;
};

}  // namespace confquant
