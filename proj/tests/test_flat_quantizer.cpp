// Quantization on flat space: the two constructions agree, the map is
// equivariant under every conformal generator (exhaustively on a monomial
// basis), satisfies the single characterizing equation, and is formally
// self-adjoint exactly on the symmetric weight line.

#include <vector>

#include "confquant/coefficients.hpp"
#include "confquant/errors.hpp"
#include "confquant/flat_quantizer.hpp"
#include "confquant/invariant_ops.hpp"
#include "confquant/rng.hpp"
#include "doctest.h"

using namespace confquant;

namespace {

Rational rat(long n, long d = 1) { return make_rational(n, d); }

Poly xv(int n, int i) { return Poly::var_x(n, i); }
Poly xiv(int n, int i) { return Poly::var_xi(n, i); }

// All exponent vectors of length n with entry sum <= total.
void enumerate_exponents(int n, int total, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(n, 0);
  // Iterative odometer over the bounded grid, filtered by total degree.
  while (true) {
    int sum = 0;
    for (int e : cur) sum += e;
    if (sum <= total) out.push_back(cur);
    int k = 0;
    while (k < n) {
      if (++cur[k] <= total) break;
      cur[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
}

// Every monomial with x-degree <= max_x and xi-degree <= max_xi.
std::vector<Poly> monomial_symbols(int n, int max_x, int max_xi) {
  std::vector<std::vector<int>> xs, xis;
  enumerate_exponents(n, max_x, xs);
  enumerate_exponents(n, max_xi, xis);
  std::vector<Poly> out;
  for (const auto& a : xs) {
    for (const auto& b : xis) {
      Poly p(n);
      p.add_term(Monomial{a, b}, ExactScalar(Rational(1)));
      out.push_back(p);
    }
  }
  return out;
}

Weights random_regular_weights(Rng& rng, const FlatMetric& m) {
  while (true) {
    Rational lambda = rng.rational(6, 4);
    Rational delta = rng.rational(6, 4);
    if (is_resonant(m.n(), delta)) continue;
    return Weights(m, lambda, Rational(lambda + delta));
  }
}

VectorFieldGenerator inversion(int i) {
  VectorFieldGenerator X;
  X.kind = VectorFieldGenerator::Kind::Inversion;
  X.i = i;
  return X;
}

VectorFieldGenerator translation(int i) {
  VectorFieldGenerator X;
  X.kind = VectorFieldGenerator::Kind::Translation;
  X.i = i;
  return X;
}

}  // namespace

TEST_CASE("symbols validate their dimension and xi-degree") {
  FlatMetric m(2, 0);
  Weights w(m, rat(1, 3), rat(3, 4));
  CHECK_NOTHROW(Symbol2(w, xv(2, 0) * xiv(2, 1)));
  CHECK_THROWS_AS(Symbol2(w, xiv(2, 0) * xiv(2, 0) * xiv(2, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Symbol2(w, Poly::var_x(3, 0)), std::invalid_argument);
}

TEST_CASE("zero-order and constant-coefficient symbols quantize untouched") {
  FlatMetric m(2, 0);
  Weights w(m, rat(1, 3), rat(3, 4));
  QuantizationParams params(w);

  SUBCASE("multiplication operators") {
    Poly p0 = xv(2, 0) * xv(2, 0) * xv(2, 1) + Poly::constant(2, ExactScalar(rat(5)));
    DiffOperator2 A = quantize_components(params, Symbol2(w, p0));
    CHECK(A.A0 == p0);
    for (int i = 0; i < 2; ++i) {
      CHECK(A.A1[i].is_zero());
      for (int j = 0; j < 2; ++j) CHECK(A.A2[i][j].is_zero());
    }
    CHECK(quantize_ansatz(params, Symbol2(w, p0)) == A);
  }

  SUBCASE("constant second-order coefficients") {
    Poly p = ExactScalar(rat(3)) * (xiv(2, 0) * xiv(2, 1)) +
             ExactScalar(rat(-2)) * (xiv(2, 1) * xiv(2, 1));
    DiffOperator2 A = quantize_components(params, Symbol2(w, p));
    CHECK(A.A2[0][1] == Poly::constant(2, ExactScalar(rat(3, 2))));
    CHECK(A.A2[1][1] == Poly::constant(2, ExactScalar(rat(-2))));
    CHECK(A.A1[0].is_zero());
    CHECK(A.A1[1].is_zero());
    CHECK(A.A0.is_zero());
  }
}

TEST_CASE("one-dimensional first-order coefficient matches the closed form") {
  FlatMetric m(1, 0);
  // b1 = (2 lambda + 1) / (2 - delta) on the xi^2 component.
  struct Case { Rational lambda, mu, expect; };
  const std::vector<Case> cases = {
      {rat(0), rat(1, 2), rat(2, 3)},       // (0+1)/(2-1/2)
      {rat(1, 3), rat(2, 3), rat(1)},       // (5/3)/(5/3)
      {rat(-1, 4), rat(1, 4), rat(1, 3)},   // (1/2)/(3/2)
  };
  for (const auto& cs : cases) {
    Weights w(m, cs.lambda, cs.mu);
    QuantizationParams params(w);
    Poly p2xi2 = xv(1, 0) * xv(1, 0) * xv(1, 0) * xiv(1, 0) * xiv(1, 0);
    DiffOperator2 A = quantize_components(params, Symbol2(w, p2xi2));
    Poly expect = ExactScalar(Rational(cs.expect * 3)) * (xv(1, 0) * xv(1, 0));
    CHECK(A.A1[0] == expect);
  }
}

TEST_CASE("half-density weights reproduce the explicit operator ansatz") {
  FlatMetric m(2, 0);
  Weights w(m, rat(1, 2), rat(1, 2));
  QuantizationParams params(w);
  Rng rng(301);
  for (int t = 0; t < 12; ++t) {
    Poly P = rng.poly(2, 3, 2, 6, false);
    // Id + 1/2 D + 1/48 L0 + 1/12 D^2 at n = 2.
    Poly img = P;
    img += ExactScalar(rat(1, 2)) * op_D(P);
    img += ExactScalar(rat(1, 48)) * op_L0(m, P);
    img += ExactScalar(rat(1, 12)) * op_D(op_D(P));
    CHECK(quantize_ansatz(params, Symbol2(w, P)) == symbol_to_operator(img));
  }
}

TEST_CASE("component and ansatz constructions agree on random symbols") {
  Rng rng(kDefaultSeed);
  int done = 0;
  while (done < 100) {
    const int n = rng.int_in(1, 3);
    const int p = rng.int_in(0, n);
    FlatMetric m(p, n - p);
    Weights w = random_regular_weights(rng, m);
    QuantizationParams params(w);
    Symbol2 s(w, rng.poly(n, 3, 2, 5, (done % 3) == 0));
    CHECK(quantize_components(params, s) == quantize_ansatz(params, s));
    ++done;
  }

  SUBCASE("including the one-dimensional chart singularity") {
    FlatMetric m(1, 0);
    Weights w(m, rat(1, 4), rat(13, 4));  // delta = 3: gammas unavailable
    CHECK_FALSE(generic_coefficients(w).gamma1.has());
    QuantizationParams params(w);
    Rng inner(77);
    for (int t = 0; t < 10; ++t) {
      Symbol2 s(w, inner.poly(1, 3, 2, 4, t % 2 == 0));
      CHECK(quantize_components(params, s) == quantize_ansatz(params, s));
    }
  }
}

TEST_CASE("principal symbol is preserved") {
  Rng rng(902);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.int_in(1, 3);
    FlatMetric m(n, 0);
    Weights w = random_regular_weights(rng, m);
    QuantizationParams params(w);
    Poly P = rng.poly(n, 3, 2, 5, false);
    DiffOperator2 A = quantize(params, Symbol2(w, P));
    SymbolComponents c = split_symbol(P);
    CHECK(A.A2 == c.P2);
  }
}

TEST_CASE("hbar rescaling multiplies degree-k parts by (i hbar)^k") {
  FlatMetric m(2, 0);
  Weights w(m, rat(1, 3), rat(3, 4));

  SUBCASE("quadratic part at hbar = 1 flips sign") {
    Symbol2 s(w, xiv(2, 0) * xiv(2, 0));
    CHECK(apply_hbar(s, rat(1)).P == ExactScalar(rat(-1)) * (xiv(2, 0) * xiv(2, 0)));
  }
  SUBCASE("zero-order part is unchanged") {
    Poly p0 = xv(2, 0) * xv(2, 1);
    CHECK(apply_hbar(Symbol2(w, p0), rat(7, 3)).P == p0);
  }
  SUBCASE("linear part at hbar = 2 becomes 2i xi") {
    Symbol2 s(w, xiv(2, 0));
    CHECK(apply_hbar(s, rat(2)).P ==
          ExactScalar(Rational(0), rat(2)) * xiv(2, 0));
  }
  SUBCASE("mixed degrees rescale independently") {
    Poly p = xiv(2, 0) * xiv(2, 0) + xiv(2, 0) + Poly::constant(2, ExactScalar(rat(1)));
    Poly got = apply_hbar(Symbol2(w, p), rat(2)).P;
    Poly expect = ExactScalar(rat(-4)) * (xiv(2, 0) * xiv(2, 0)) +
                  ExactScalar(Rational(0), rat(2)) * xiv(2, 0) +
                  Poly::constant(2, ExactScalar(rat(1)));
    CHECK(got == expect);
  }
}

TEST_CASE("operators apply to densities exactly") {
  FlatMetric m(2, 0);
  Weights w(m, rat(1, 2), rat(1, 2));
  QuantizationParams params(w);

  SUBCASE("pure second derivative") {
    DiffOperator2 A = quantize(params, Symbol2(w, xiv(2, 0) * xiv(2, 0)));
    Poly f = xv(2, 0) * xv(2, 0) * xv(2, 0);
    CHECK(apply_operator(A, f) == ExactScalar(rat(6)) * xv(2, 0));
    CHECK(apply_operator(A, xv(2, 0) * xv(2, 0)) ==
          Poly::constant(2, ExactScalar(rat(2))));
  }
  SUBCASE("multiplication operator") {
    DiffOperator2 A = quantize(params, Symbol2(w, xv(2, 1)));
    CHECK(apply_operator(A, xv(2, 0)) == xv(2, 0) * xv(2, 1));
  }
  SUBCASE("densities must be x-only") {
    DiffOperator2 A = quantize(params, Symbol2(w, xiv(2, 0)));
    CHECK_THROWS_AS(apply_operator(A, xiv(2, 1)), std::invalid_argument);
  }
}

TEST_CASE("equivariance holds exhaustively on a monomial basis") {
  const std::vector<std::pair<Rational, Rational>> weight_list = {
      {rat(1, 2), rat(1, 2)}, {rat(1, 3), rat(3, 4)}};
  struct Sig { int p, q; };
  long total_checked = 0;
  for (int n : {1, 2, 3}) {
    std::vector<Sig> sigs;
    if (n == 1) sigs = {{1, 0}, {0, 1}};
    if (n == 2) sigs = {{2, 0}, {1, 1}};
    if (n == 3) sigs = {{3, 0}, {2, 1}};
    const std::vector<Poly> basis = monomial_symbols(n, 3, 2);
    for (const Sig sig : sigs) {
      FlatMetric m(sig.p, sig.q);
      for (const auto& lm : weight_list) {
        Weights w(m, lm.first, lm.second);
        const CoefficientSet c = generic_coefficients(w);
        long bad = 0;
        for (const auto& X : conformal_generators(n)) {
          for (const auto& P : basis) {
            if (!equivariance_residual_with(c, w, X, P).is_zero()) ++bad;
            ++total_checked;
          }
        }
        CHECK(bad == 0);
      }
    }
  }
  // 1, 2 and 3 dimensions; 2 signatures and 2 weight pairs each.
  const long expected = 2 * 2 * (3L * 12 + 6L * 60 + 10L * 200);
  CHECK(total_checked == expected);
}

TEST_CASE("equivariance fails for mutated coefficients") {
  FlatMetric m(2, 0);
  Weights w(m, rat(1, 2), rat(1, 2));
  CoefficientSet c = generic_coefficients(w);
  c.alpha.value = Rational(c.alpha.get() + 1);
  const Poly P = xv(2, 0) * xiv(2, 0);
  CHECK_FALSE(equivariance_residual_with(c, w, inversion(0), P).is_zero());
  // Translations cannot see the zero-order block shift.
  CHECK(equivariance_residual_with(c, w, translation(0), P).is_zero());
}

TEST_CASE("spot examples of the equivariance residual") {
  SUBCASE("translations on constant-coefficient symbols") {
    FlatMetric m(2, 0);
    Weights w(m, rat(1, 3), rat(3, 4));
    QuantizationParams params(w);
    Symbol2 s(w, xiv(2, 0) * xiv(2, 1) + xiv(2, 1));
    for (int i = 0; i < 2; ++i) {
      CHECK(equivariance_residual(params, translation(i), s).is_zero());
    }
  }
  SUBCASE("an inversion on a mixed symbol at half-density weights") {
    FlatMetric m(2, 0);
    Weights w(m, rat(1, 2), rat(1, 2));
    QuantizationParams params(w);
    Symbol2 s(w, xv(2, 1) * xiv(2, 0) * xiv(2, 1));
    CHECK(equivariance_residual(params, inversion(0), s).is_zero());
  }
}

TEST_CASE("first-order symbols are equivariant under arbitrary fields") {
  Rng rng(411);
  for (int n : {1, 2, 3}) {
    FlatMetric m(n == 2 ? 1 : n, n == 2 ? 1 : 0);
    Weights w = random_regular_weights(rng, m);
    const CoefficientSet c = generic_coefficients(w);
    for (int t = 0; t < 8; ++t) {
      std::vector<Poly> X;
      for (int k = 0; k < n; ++k) X.push_back(rng.poly(n, 2, 0, 3, false));
      const Poly P = rng.poly(n, 3, 1, 4, false);
      const DiffOperator2 lhs =
          quantize_with(c, m, lie_symbol(X, w.delta(), P));
      const DiffOperator2 rhs =
          lie_operator_defn(X, w.lambda, w.mu, quantize_with(c, m, P));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("the single characterizing equation holds exactly") {
  Rng rng(733);
  for (int n : {2, 3}) {
    FlatMetric m(n, 0);
    for (int t = 0; t < 6; ++t) {
      Weights w = random_regular_weights(rng, m);
      QuantizationParams params(w);
      Symbol2 s(w, rng.poly(n, 3, 2, 6, false));
      CHECK(equivariance_equation_residual(params, s).is_zero());
    }
  }

  SUBCASE("also in mixed signature and dimension one") {
    Rng inner(734);
    FlatMetric m11(1, 1);
    Weights w11 = random_regular_weights(inner, m11);
    QuantizationParams p11(w11);
    Symbol2 s11(w11, inner.poly(2, 3, 2, 6, false));
    CHECK(equivariance_equation_residual(p11, s11).is_zero());

    FlatMetric m1(1, 0);
    Rng one(735);
    while (true) {
      Weights w1 = random_regular_weights(one, m1);
      if (w1.delta() == 3) continue;  // stay inside the gamma chart
      QuantizationParams p1(w1);
      Symbol2 s1(w1, one.poly(1, 3, 2, 6, false));
      CHECK(equivariance_equation_residual(p1, s1).is_zero());
      break;
    }
  }

  SUBCASE("the identity map fails the equation once lambda is nonzero") {
    FlatMetric m(2, 0);
    Weights w(m, rat(1, 3), rat(1, 3));
    CoefficientSet id;
    id.n = 2;
    id.lambda = w.lambda;
    id.mu = w.mu;
    id.delta = w.delta();
    for (auto* g : {&id.gamma1, &id.gamma2, &id.gamma3, &id.gamma4, &id.gamma5}) {
      g->value = Rational(0);
    }
    const Poly P = xiv(2, 0);
    const Poly r = equivariance_equation_residual_with(id, w, P);
    CHECK_FALSE(r.is_zero());
    // Q = Id makes the commutator vanish, leaving -2 n lambda xi_1.
    CHECK(r == ExactScalar(rat(-4, 3)) * xiv(2, 0));
  }

  SUBCASE("xi-free symbols are annihilated by both sides") {
    FlatMetric m(2, 0);
    Weights w(m, rat(1, 3), rat(3, 4));
    QuantizationParams params(w);
    Symbol2 s(w, xv(2, 0) * xv(2, 0) * xv(2, 1));
    CHECK(equivariance_equation_residual(params, s).is_zero());
  }
}

TEST_CASE("formal adjoint") {
  SUBCASE("constant real coefficients: first-order part flips sign") {
    DiffOperator2 A(2);
    A.A2[0][0] = Poly::constant(2, ExactScalar(rat(2)));
    A.A2[0][1] = A.A2[1][0] = Poly::constant(2, ExactScalar(rat(1, 2)));
    A.A1[0] = Poly::constant(2, ExactScalar(rat(3)));
    A.A0 = Poly::constant(2, ExactScalar(rat(-7)));
    DiffOperator2 At = formal_adjoint(A);
    CHECK(At.A2 == A.A2);
    CHECK(At.A1[0] == ExactScalar(rat(-1)) * A.A1[0]);
    CHECK(At.A1[1].is_zero());
    CHECK(At.A0 == A.A0);
  }

  SUBCASE("involution and conjugate-linearity") {
    Rng rng(515);
    for (int t = 0; t < 10; ++t) {
      const int n = rng.int_in(1, 3);
      DiffOperator2 A = symbol_to_operator(rng.poly(n, 3, 2, 6, true));
      CHECK(formal_adjoint(formal_adjoint(A)) == A);
      const ExactScalar i_unit(Rational(0), Rational(1));
      CHECK(formal_adjoint(i_unit * A) ==
            i_unit.conj() * formal_adjoint(A));
    }
  }

  SUBCASE("the hbar-twisted map is self-adjoint on the symmetric line") {
    Rng rng(616);
    const std::vector<Rational> lambdas = {rat(0), rat(1, 4), rat(1, 2)};
    for (int n : {1, 2, 3}) {
      FlatMetric m(n == 2 ? 1 : n, n == 2 ? 1 : 0);
      for (const Rational& lambda : lambdas) {
        Weights w(m, lambda, Rational(1 - lambda));
        QuantizationParams params(w);
        params.hbar = rat(3, 2);
        if (is_resonant(n, w.delta())) {
          params.pin_by_symmetry = true;
          if (n == 2) params.free_values["gamma4"] = rat(7, 3);
        }
        for (int t = 0; t < 4; ++t) {
          Symbol2 s(w, rng.poly(n, 3, 2, 5, false));
          DiffOperator2 A = quantize_hbar(params, s);
          CHECK(formal_adjoint(A) == A);
        }
      }
    }
  }

  SUBCASE("self-adjointness fails off the symmetric line") {
    FlatMetric m(2, 0);
    Weights w(m, rat(0), rat(1, 3));
    QuantizationParams params(w);
    Symbol2 s(w, xv(2, 0) * xiv(2, 0));
    DiffOperator2 A = quantize_hbar(params, s);
    CHECK(formal_adjoint(A) != A);
  }
}

TEST_CASE("resonant weights") {
  SUBCASE("unresolved families refuse to quantize") {
    FlatMetric m(2, 0);
    Weights w(m, rat(0), rat(3, 2));
    QuantizationParams params(w);
    Symbol2 s(w, xiv(2, 0) * xiv(2, 0));
    CHECK_THROWS_AS(quantize(params, s), ResonanceUnresolvedError);
  }

  SUBCASE("inadmissible pairs at a resonant shift are rejected") {
    FlatMetric m(2, 0);
    Weights w(m, rat(1, 4), rat(7, 4));
    QuantizationParams params(w);
    Symbol2 s(w, xiv(2, 0));
    CHECK_THROWS_AS(quantize(params, s), InadmissiblePairError);
  }

  SUBCASE("every member of a resolved resonant family is equivariant") {
    FlatMetric m(2, 0);
    // delta = 1 with (lambda, mu) = (0, 1): pin the symmetric coefficients
    // and sweep the leftover free direction.
    for (const Rational& g4 : {rat(1, 48), rat(7, 5)}) {
      Weights w(m, rat(0), rat(1));
      QuantizationParams params(w);
      params.pin_by_symmetry = true;
      params.free_values["gamma4"] = g4;
      const CoefficientSet c = params.resolve();
      for (const auto& X : conformal_generators(2)) {
        for (const auto& P : monomial_symbols(2, 2, 2)) {
          CHECK(equivariance_residual_with(c, w, X, P).is_zero());
        }
      }
    }
    // delta = 3/2 with (lambda, mu) = (-1/2, 1): no symmetry pinning is
    // possible; an explicit free value still yields an equivariant map.
    Weights w(m, rat(-1, 2), rat(1));
    QuantizationParams params(w);
    params.free_values["gamma4"] = rat(2);
    const CoefficientSet c = params.resolve();
    for (const auto& X : conformal_generators(2)) {
      for (const auto& P : monomial_symbols(2, 2, 2)) {
        CHECK(equivariance_residual_with(c, w, X, P).is_zero());
      }
    }
  }

  SUBCASE("first-order resonance exposes the free alpha") {
    FlatMetric m(1, 0);
    Weights w(m, rat(0), rat(1));
    QuantizationParams params(w);
    params.free_values["alpha"] = rat(2, 7);
    Symbol2 s(w, xv(1, 0) * xiv(1, 0));
    DiffOperator2 A = quantize(params, s);
    CHECK(A.A0 == Poly::constant(1, ExactScalar(rat(2, 7))));
  }

  SUBCASE("canonical free-coefficient names") {
    CHECK(canonical_free_coefficient(2, rat(1)) == "gamma3");
    CHECK(canonical_free_coefficient(2, rat(3, 2)) == "gamma4");
    CHECK(canonical_free_coefficient(3, rat(5, 6)) == "gamma4");
    CHECK(canonical_free_coefficient(1, rat(1)) == "alpha");
    CHECK(canonical_free_coefficient(1, rat(3, 2)) == "b0");
    CHECK(canonical_free_coefficient(1, rat(2)) == "b1");
    CHECK_THROWS_AS(canonical_free_coefficient(2, rat(1, 5)),
                    std::invalid_argument);
  }
}
