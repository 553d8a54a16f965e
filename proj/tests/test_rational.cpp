#include "confquant/rational.hpp"

#include <stdexcept>

#include "confquant/errors.hpp"
#include "confquant/rng.hpp"
#include "doctest.h"

using namespace confquant;

TEST_CASE("make_rational normalizes and rejects zero denominators") {
  CHECK(make_rational(2, 4) == make_rational(1, 2));
  CHECK(make_rational(-2, -4) == make_rational(1, 2));
  CHECK(make_rational(2, -4) == make_rational(-1, 2));
  CHECK(make_rational(0, 7) == 0);
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("rational string round trip is canonical") {
  CHECK(rat_str(make_rational(1, 2)) == "1/2");
  CHECK(rat_str(make_rational(-3, 2)) == "-3/2");
  CHECK(rat_str(make_rational(4, 2)) == "2");
  CHECK(rat_str(Rational(0)) == "0");

  CHECK(rat_parse("1/2") == make_rational(1, 2));
  CHECK(rat_parse("-1/2") == make_rational(-1, 2));
  CHECK(rat_parse("1/-2") == make_rational(-1, 2));
  CHECK(rat_parse("+3") == Rational(3));
  CHECK(rat_parse("6/4") == make_rational(3, 2));
  CHECK(rat_parse("-0") == 0);

  Rng rng(kDefaultSeed);
  for (int t = 0; t < 200; ++t) {
    Rational r = rng.rational(1000, 999);
    CHECK(rat_parse(rat_str(r)) == r);
  }
}

TEST_CASE("rational parsing rejects malformed input") {
  for (const char* bad : {"", "/", "1/", "/2", "1//2", "a", "1/a", "1.5",
                          "1 /2", " 1", "1 ", "--1", "++2", "2/+", "0x10"}) {
    CHECK_THROWS_AS(rat_parse(bad), ParseError);
  }
  CHECK_THROWS_AS(rat_parse("1/0"), ParseError);
  CHECK_THROWS_AS(rat_parse("-3/0"), ParseError);
}

TEST_CASE("complex scalar arithmetic") {
  ExactScalar a(make_rational(1, 2), make_rational(-1, 3));
  ExactScalar b(make_rational(2, 5), make_rational(7, 2));

  CHECK((a + b) - b == a);
  CHECK(a * ExactScalar(1) == a);
  CHECK(a * ExactScalar(0) == ExactScalar(0));
  CHECK(a + (-a) == ExactScalar(0));
  CHECK((a / b) * b == a);
  CHECK(a * a.conj() ==
        ExactScalar(a.re() * a.re() + a.im() * a.im(), Rational(0)));
  CHECK_THROWS_AS(a / ExactScalar(0), std::domain_error);

  CHECK(ExactScalar::i() * ExactScalar::i() == ExactScalar(-1));
  for (long k = -8; k <= 8; ++k) {
    ExactScalar expect(1);
    if (k >= 0) {
      for (long t = 0; t < k; ++t) expect *= ExactScalar::i();
    } else {
      for (long t = 0; t < -k; ++t) expect /= ExactScalar::i();
    }
    CHECK(ExactScalar::i_pow(k) == expect);
  }
}

TEST_CASE("complex scalar field axioms on random triples") {
  Rng rng(kDefaultSeed);
  for (int t = 0; t < 100; ++t) {
    ExactScalar a = rng.scalar(true);
    ExactScalar b = rng.scalar(true);
    ExactScalar c = rng.scalar(true);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b).conj() == a.conj() + b.conj());
    CHECK((a * b).conj() == a.conj() * b.conj());
    if (!c.is_zero()) {
      CHECK((a / c) + (b / c) == (a + b) / c);
    }
  }
}

TEST_CASE("complex scalar printing") {
  CHECK(ExactScalar(0).str() == "0");
  CHECK(ExactScalar(1).str() == "1");
  CHECK(ExactScalar(-1).str() == "-1");
  CHECK(ExactScalar::i().str() == "i");
  CHECK((-ExactScalar::i()).str() == "-i");
  CHECK(ExactScalar(make_rational(3, 2)).str() == "3/2");
  CHECK(ExactScalar(Rational(1), Rational(1)).str() == "1+i");
  CHECK(ExactScalar(Rational(1), Rational(-2)).str() == "1-2*i");
  CHECK(ExactScalar(Rational(0), make_rational(5, 3)).str() == "5/3*i");
  CHECK(ExactScalar(make_rational(-1, 2), make_rational(1, 2)).str() ==
        "-1/2+1/2*i");
}

TEST_CASE("scalar predicates") {
  CHECK(ExactScalar(0).is_zero());
  CHECK(!ExactScalar::i().is_zero());
  CHECK(ExactScalar(Rational(5)).is_real());
  CHECK(!ExactScalar(Rational(5), Rational(1)).is_real());
}
