#include "confquant/diff_op.hpp"

#include <stdexcept>
#include <vector>

#include "confquant/invariant_ops.hpp"
#include "confquant/rng.hpp"
#include "doctest.h"

using namespace confquant;

namespace {

Poly random_function(Rng& rng, int n) { return rng.poly(n, 4, 0, 4); }

DiffOperator2 random_operator(Rng& rng, int n) {
  return symbol_to_operator(rng.symbol2(n, 3, 5));
}

}  // namespace

TEST_CASE("composition matches sequential application") {
  Rng rng(kDefaultSeed);
  for (int t = 0; t < 30; ++t) {
    int n = static_cast<int>(rng.int_in(1, 3));
    DensityOp A = to_density_op(random_operator(rng, n));
    DensityOp B = to_density_op(random_operator(rng, n));
    Poly f = random_function(rng, n);
    CHECK(A.compose(B).apply(f) == A.apply(B.apply(f)));
  }
}

TEST_CASE("composition is associative and distributes") {
  Rng rng(kDefaultSeed + 1);
  for (int t = 0; t < 10; ++t) {
    int n = static_cast<int>(rng.int_in(1, 2));
    DensityOp A = to_density_op(random_operator(rng, n));
    DensityOp B = to_density_op(random_operator(rng, n));
    DensityOp C = to_density_op(random_operator(rng, n));
    CHECK(A.compose(B.compose(C)) == A.compose(B).compose(C));
    CHECK(A.compose(B + C) == A.compose(B) + A.compose(C));
    CHECK(DensityOp::identity(n).compose(A) == A);
    CHECK(A.compose(DensityOp::identity(n)) == A);
  }
}

TEST_CASE("multiplication operators compose like the ring") {
  Rng rng(kDefaultSeed + 2);
  int n = 2;
  Poly f = random_function(rng, n);
  Poly g = random_function(rng, n);
  CHECK(DensityOp::multiplication(f).compose(DensityOp::multiplication(g)) ==
        DensityOp::multiplication(f * g));
  // d/dx^0 o (f .) = (df/dx^0 .) + (f .) o d/dx^0  [Leibniz]
  DensityOp d(n);
  d.add_term({1, 0}, Poly::constant(n, ExactScalar(1)));
  DensityOp lhs = d.compose(DensityOp::multiplication(f));
  DensityOp rhs = DensityOp::multiplication(f.partial_x(0)) +
                  DensityOp::multiplication(f).compose(d);
  CHECK(lhs == rhs);
}

TEST_CASE("order-2 package round trips") {
  Rng rng(kDefaultSeed + 3);
  for (int t = 0; t < 20; ++t) {
    int n = static_cast<int>(rng.int_in(1, 3));
    DiffOperator2 A = random_operator(rng, n);
    A.validate();
    CHECK(to_diff_operator2(to_density_op(A)) == A);

    Poly sym = rng.symbol2(n, 3, 5);
    CHECK(operator_to_symbol(symbol_to_operator(sym)) == sym);
    CHECK(symbol_to_operator(operator_to_symbol(A)) == A);
  }
  Poly cubic(1);
  cubic.add_term(Monomial{{0}, {3}}, ExactScalar(1));
  CHECK_THROWS_AS(symbol_to_operator(cubic), std::invalid_argument);
}

TEST_CASE("operator application matches symbol contraction on first order") {
  // For A = A1^i d_i + A0 and f a function, A f = A1^i d_i f + A0 f.
  int n = 2;
  DiffOperator2 A(n);
  A.A1[0] = Poly::var_x(n, 1);    // x2 d_1
  A.A0 = Poly::var_x(n, 0);       // + x1
  Poly f = Poly::var_x(n, 0) * Poly::var_x(n, 0);  // x1^2
  Poly expect = ExactScalar(2) * (Poly::var_x(n, 1) * Poly::var_x(n, 0)) +
                Poly::var_x(n, 0) * f;
  CHECK(A.apply(f) == expect);
}

TEST_CASE("operator Lie action reduces to the bare commutator for isometries") {
  Rng rng(kDefaultSeed + 4);
  for (const FlatMetric& m : {FlatMetric(2, 0), FlatMetric(1, 1)}) {
    const int n = m.n();
    const Rational lambda = make_rational(1, 3);
    const Rational mu = make_rational(1, 3);
    for (const auto& X : euclidean_generators(n)) {
      DiffOperator2 A = random_operator(rng, n);
      DensityOp lx = lie_density_op(m, X, lambda);
      DensityOp commutator =
          lx.compose(to_density_op(A)) - to_density_op(A).compose(lx);
      CHECK(to_density_op(lie_operator_defn(m, X, lambda, mu, A)) ==
            commutator);
    }
  }
}

TEST_CASE("operator Lie action satisfies the definition on random fields") {
  // L^{lambda,mu}_X(A) f = L^mu_X(A f) - A(L^lambda_X f) for every f.
  Rng rng(kDefaultSeed + 5);
  for (const FlatMetric& m : {FlatMetric(2, 0), FlatMetric(1, 1)}) {
    const int n = m.n();
    for (const auto& X : conformal_generators(n)) {
      Rational lambda = rng.rational();
      Rational mu = rng.rational();
      DiffOperator2 A = random_operator(rng, n);
      Poly f = random_function(rng, n);
      Poly lhs = lie_operator_defn(m, X, lambda, mu, A).apply(f);
      Poly rhs = lie_density(m, X, mu, A.apply(f)) -
                 A.apply(lie_density(m, X, lambda, f));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("density Lie action is the first-order operator") {
  Rng rng(kDefaultSeed + 6);
  FlatMetric m(2, 1);
  const int n = 3;
  for (const auto& X : conformal_generators(n)) {
    Rational lambda = rng.rational();
    Poly f = random_function(rng, n);
    CHECK(lie_density_op(m, X, lambda).apply(f) ==
          lie_density(m, X, lambda, f));
  }
}

TEST_CASE("closed-form inversion action matches the defining commutator") {
  Rng rng(kDefaultSeed + 7);
  for (const FlatMetric& m :
       {FlatMetric(1, 0), FlatMetric(2, 0), FlatMetric(1, 1),
        FlatMetric(2, 1)}) {
    const int n = m.n();
    for (int t = 0; t < 6; ++t) {
      Rational lambda = rng.rational();
      Rational delta = rng.rational();
      Rational mu = lambda + delta;
      DiffOperator2 A = random_operator(rng, n);
      std::vector<DiffOperator2> closed =
          inversion_action_formula(m, lambda, mu, A);
      REQUIRE(static_cast<int>(closed.size()) == n);
      for (int r = 0; r < n; ++r) {
        VectorFieldGenerator inv{VectorFieldGenerator::Kind::Inversion, r, 0};
        CHECK(closed[r] == lie_operator_defn(m, inv, lambda, mu, A));
      }
    }
  }
}

TEST_CASE("symbol split/join round trip and block structure") {
  Rng rng(kDefaultSeed + 8);
  for (int t = 0; t < 10; ++t) {
    int n = static_cast<int>(rng.int_in(1, 3));
    Poly sym = rng.symbol2(n, 3, 6);
    SymbolComponents c = split_symbol(sym);
    CHECK(join_symbol(c) == sym);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CHECK(c.P2[i][j] == c.P2[j][i]);
      }
    }

    // identity block reproduces the normal-ordering package.
    CHECK(block_identity(c) == symbol_to_operator(sym));
  }

  // Hand-checked blocks on P = x1 xi1 xi2 in dimension 2 (Euclidean):
  //   P2^{12} = P2^{21} = x1/2, other components zero.
  FlatMetric m(2, 0);
  Poly sym(2);
  sym.add_term(Monomial{{1, 0}, {1, 1}}, ExactScalar(1));
  SymbolComponents c = split_symbol(sym);

  DiffOperator2 b1 = block_beta1(c);
  // A1^i = d_j P2^{ij}: A1^1 = d_2(x1/2) = 0, A1^2 = d_1(x1/2) = 1/2.
  CHECK(b1.A1[0].is_zero());
  CHECK(b1.A1[1] == Poly::constant(2, ExactScalar(make_rational(1, 2))));
  CHECK(b1.A0.is_zero());

  // The metric trace of P2 vanishes, so the trace blocks vanish.
  CHECK(block_beta2(m, c) == DiffOperator2(2));
  CHECK(block_beta4(m, c) == DiffOperator2(2));
  // beta3: d_i d_j P2^{ij} = 2 d_1 d_2 (x1/2) = 0.
  CHECK(block_beta3(c) == DiffOperator2(2));

  // With a trace component: P = x1^2 (xi1^2 + xi2^2).
  Poly sym2(2);
  sym2.add_term(Monomial{{2, 0}, {2, 0}}, ExactScalar(1));
  sym2.add_term(Monomial{{2, 0}, {0, 2}}, ExactScalar(1));
  SymbolComponents c2 = split_symbol(sym2);
  DiffOperator2 b2 = block_beta2(m, c2);
  // g_{kl} P2^{kl} = 2 x1^2; A1^i = d_i of it: A1^1 = 4 x1, A1^2 = 0.
  CHECK(b2.A1[0] == ExactScalar(4) * Poly::var_x(2, 0));
  CHECK(b2.A1[1].is_zero());
  DiffOperator2 b4 = block_beta4(m, c2);
  // A0 = (d_1^2 + d_2^2)(2 x1^2) = 4.
  CHECK(b4.A0 == Poly::constant(2, ExactScalar(4)));
}

TEST_CASE("second-order package rejects malformed data") {
  DiffOperator2 A(2);
  A.A2[0][1] = Poly::var_x(2, 0);  // asymmetric
  CHECK_THROWS_AS(A.validate(), std::invalid_argument);

  DiffOperator2 B(2);
  B.A0 = Poly::var_xi(2, 0);  // xi-dependent coefficient
  CHECK_THROWS_AS(B.validate(), std::invalid_argument);

  DensityOp third(2);
  third.add_term({3, 0}, Poly::constant(2, ExactScalar(1)));
  CHECK_THROWS_AS(to_diff_operator2(third), std::invalid_argument);
}
