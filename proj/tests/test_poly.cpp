#include "confquant/poly.hpp"

#include <stdexcept>
#include <vector>

#include "confquant/rng.hpp"
#include "doctest.h"

using namespace confquant;

namespace {

Poly x(int n, int i) { return Poly::var_x(n, i); }
Poly xi(int n, int i) { return Poly::var_xi(n, i); }

std::vector<Rational> random_point(Rng& rng, int n) {
  std::vector<Rational> p;
  for (int k = 0; k < n; ++k) p.push_back(rng.rational(5, 3));
  return p;
}

}  // namespace

TEST_CASE("polynomial construction and term bookkeeping") {
  Poly p(2);
  CHECK(p.is_zero());
  CHECK(p.degree() == -1);
  CHECK(p.x_degree() == -1);
  CHECK(p.xi_degree() == -1);

  p.add_term(Monomial{{1, 0}, {0, 1}}, ExactScalar(2));  // 2 x1 xi2
  p.add_term(Monomial{{1, 0}, {0, 1}}, ExactScalar(-2));
  CHECK(p.is_zero());

  p.add_term(Monomial{{0, 3}, {0, 0}}, ExactScalar(1));  // x2^3
  CHECK(p.degree() == 3);
  CHECK(p.x_degree() == 3);
  CHECK(p.xi_degree() == 0);
  CHECK(p.is_x_only());
  CHECK(p.coeff(Monomial{{0, 3}, {0, 0}}) == ExactScalar(1));
  CHECK(p.coeff(Monomial{{3, 0}, {0, 0}}) == ExactScalar(0));

  CHECK_THROWS_AS(p.add_term(Monomial{{1}, {0}}, ExactScalar(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(p.add_term(Monomial{{-1, 0}, {0, 0}}, ExactScalar(1)),
                  std::invalid_argument);
}

TEST_CASE("product expands binomials") {
  int n = 1;
  Poly s = x(n, 0) + xi(n, 0);
  Poly sq = s * s;
  Poly expect(n);
  expect.add_term(Monomial{{2}, {0}}, ExactScalar(1));
  expect.add_term(Monomial{{1}, {1}}, ExactScalar(2));
  expect.add_term(Monomial{{0}, {2}}, ExactScalar(1));
  CHECK(sq == expect);

  CHECK((x(n, 0) - x(n, 0)) * s == Poly(n));
  CHECK(ExactScalar(0) * s == Poly(n));
}

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(kDefaultSeed);
  for (int t = 0; t < 60; ++t) {
    int n = static_cast<int>(rng.int_in(1, 3));
    Poly a = rng.poly(n, 3, 2, 4, true);
    Poly b = rng.poly(n, 3, 2, 4, true);
    Poly c = rng.poly(n, 3, 2, 4, true);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Poly(n));
  }
}

TEST_CASE("mixed-dimension arithmetic is rejected") {
  Poly a(2), b(3);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("partial derivatives satisfy the Leibniz rule") {
  Rng rng(kDefaultSeed + 1);
  int n = 3;
  Poly p = x(n, 0) * x(n, 0) * x(n, 0);
  CHECK(p.partial_x(0) == ExactScalar(3) * (x(n, 0) * x(n, 0)));
  CHECK(p.partial_x(1) == Poly(n));
  CHECK(xi(n, 2).partial_xi(2) == Poly::constant(n, ExactScalar(1)));

  for (int t = 0; t < 40; ++t) {
    Poly f = rng.poly(n, 3, 2, 4, true);
    Poly g = rng.poly(n, 3, 2, 4, true);
    for (int k = 0; k < n; ++k) {
      CHECK((f * g).partial_x(k) == f.partial_x(k) * g + f * g.partial_x(k));
      CHECK((f * g).partial_xi(k) ==
            f.partial_xi(k) * g + f * g.partial_xi(k));
      // Mixed partials commute.
      CHECK(f.partial_x(k).partial_xi(k) == f.partial_xi(k).partial_x(k));
    }
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  Rng rng(kDefaultSeed + 2);
  for (int t = 0; t < 40; ++t) {
    int n = static_cast<int>(rng.int_in(1, 3));
    Poly f = rng.poly(n, 3, 2, 4, true);
    Poly g = rng.poly(n, 3, 2, 4, true);
    std::vector<Rational> xs = random_point(rng, n);
    std::vector<Rational> xis = random_point(rng, n);
    CHECK((f + g).eval(xs, xis) == f.eval(xs, xis) + g.eval(xs, xis));
    CHECK((f * g).eval(xs, xis) == f.eval(xs, xis) * g.eval(xs, xis));
  }
  CHECK_THROWS_AS(Poly(2).eval({Rational(1)}, {Rational(1), Rational(0)}),
                  std::invalid_argument);
}

TEST_CASE("homogeneous parts decompose the polynomial") {
  Rng rng(kDefaultSeed + 3);
  for (int t = 0; t < 20; ++t) {
    int n = static_cast<int>(rng.int_in(1, 3));
    Poly f = rng.poly(n, 3, 2, 6, true);
    Poly back(n);
    for (int d = 0; d <= f.xi_degree(); ++d) {
      Poly part = f.xi_homogeneous_part(d);
      if (!part.is_zero()) {
        CHECK(part.xi_degree() == d);
      }
      back += part;
    }
    CHECK(back == f);
  }
}

TEST_CASE("polynomial printing is canonical") {
  int n = 2;
  CHECK(Poly(n).str() == "0");
  CHECK(Poly::constant(n, ExactScalar(make_rational(-3, 4))).str() == "-3/4");

  Poly p(n);
  p.add_term(Monomial{{2, 0}, {0, 1}}, ExactScalar(2));
  p.add_term(Monomial{{0, 0}, {1, 0}}, ExactScalar(-1));
  CHECK(p.str() == "-xi1 + 2*x1^2*xi2");

  Poly q(n);
  q.add_term(Monomial{{1, 1}, {0, 0}}, ExactScalar(Rational(1), Rational(-1)));
  CHECK(q.str() == "(1-i)*x1*x2");

  Poly r(n);
  r.add_term(Monomial{{0, 0}, {0, 2}}, ExactScalar(Rational(0), Rational(1)));
  CHECK(r.str() == "i*xi2^2");
}
