#include "confquant/invariant_ops.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "confquant/errors.hpp"
#include "confquant/linsolve.hpp"
#include "confquant/rng.hpp"
#include "doctest.h"

using namespace confquant;

namespace {

// All monomial symbols with bounded degrees, for brute-force operator
// identities.
std::vector<Poly> monomial_basis(int n, int x_deg, int xi_deg) {
  std::vector<std::vector<int>> xs, xis;
  std::vector<int> cur(n, 0);
  std::function<void(int, int, std::vector<std::vector<int>>*)> gen =
      [&](int pos, int budget, std::vector<std::vector<int>>* out) {
        if (pos == n) {
          out->push_back(cur);
          return;
        }
        for (int e = 0; e <= budget; ++e) {
          cur[pos] = e;
          gen(pos + 1, budget - e, out);
        }
        cur[pos] = 0;
      };
  gen(0, x_deg, &xs);
  gen(0, xi_deg, &xis);
  std::vector<Poly> out;
  for (const auto& a : xs) {
    for (const auto& b : xis) {
      Poly p(n);
      p.add_term(Monomial{a, b}, ExactScalar(1));
      out.push_back(std::move(p));
    }
  }
  return out;
}

// Vector field commutator [X, Y]^k = X^j d_j Y^k - Y^j d_j X^k.
std::vector<Poly> field_bracket(const std::vector<Poly>& X,
                                const std::vector<Poly>& Y) {
  const int n = static_cast<int>(X.size());
  std::vector<Poly> out;
  for (int k = 0; k < n; ++k) {
    Poly acc(n);
    for (int j = 0; j < n; ++j) {
      acc += X[j] * Y[k].partial_x(j) - Y[j] * X[k].partial_x(j);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// Expresses x-only component functions as an exact linear combination of
// the generators' components; fails the test when the field is outside
// the span.
std::vector<Rational> expand_in_generators(
    const FlatMetric& m, const std::vector<VectorFieldGenerator>& gens,
    const std::vector<Poly>& field) {
  const int n = m.n();
  // Coordinates: coefficients on x-monomials of degree <= 2, per component.
  std::vector<std::vector<int>> mons;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> gen = [&](int pos, int budget) {
    if (pos == n) {
      mons.push_back(cur);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      cur[pos] = e;
      gen(pos + 1, budget - e);
    }
    cur[pos] = 0;
  };
  gen(0, 2);

  auto coords = [&](const std::vector<Poly>& comp) {
    Vector v;
    for (int k = 0; k < n; ++k) {
      for (const auto& mono : mons) {
        ExactScalar c = comp[k].coeff(Monomial{mono, std::vector<int>(n, 0)});
        REQUIRE(c.is_real());
        v.push_back(c.re());
      }
    }
    return v;
  };

  Vector rhs = coords(field);
  Matrix M(rhs.size(), Vector(gens.size(), Rational(0)));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Vector col = coords(generator_components(m, gens[g]));
    for (std::size_t r = 0; r < col.size(); ++r) M[r][g] = col[r];
  }
  LinearSolution sol = solve_exact(M, rhs);
  REQUIRE(sol.kind != LinearSolution::Kind::None);
  return sol.particular;
}

}  // namespace

TEST_CASE("generator enumeration and ids") {
  for (int n : {1, 2, 3, 4}) {
    auto gens = conformal_generators(n);
    CHECK(static_cast<int>(gens.size()) == 2 * n + n * (n - 1) / 2 + 1);
    auto iso = euclidean_generators(n);
    CHECK(static_cast<int>(iso.size()) == n + n * (n - 1) / 2);
    for (const auto& g : gens) {
      VectorFieldGenerator back = parse_generator(generator_id(g), n);
      CHECK(back.kind == g.kind);
      CHECK(back.i == g.i);
      CHECK(back.j == g.j);
    }
  }
  CHECK(generator_id(VectorFieldGenerator{
            VectorFieldGenerator::Kind::Rotation, 0, 2}) == "rotation:1:3");
  CHECK_THROWS_AS(parse_generator("rotation:2:1", 3), ParseError);
  CHECK_THROWS_AS(parse_generator("translation:0", 3), ParseError);
  CHECK_THROWS_AS(parse_generator("translation:4", 3), ParseError);
  CHECK_THROWS_AS(parse_generator("boost:1", 3), ParseError);
  CHECK_THROWS_AS(parse_generator("dilation:1", 3), ParseError);
}

TEST_CASE("generator divergences") {
  for (const FlatMetric& m : {FlatMetric(3, 0), FlatMetric(2, 1),
                              FlatMetric(1, 1), FlatMetric(1, 0)}) {
    const int n = m.n();
    for (const auto& g : euclidean_generators(n)) {
      CHECK(generator_divergence(m, g).is_zero());
    }
    VectorFieldGenerator dil{VectorFieldGenerator::Kind::Dilation, 0, 0};
    CHECK(generator_divergence(m, dil) ==
          Poly::constant(n, ExactScalar(Rational(n))));
    for (int r = 0; r < n; ++r) {
      VectorFieldGenerator inv{VectorFieldGenerator::Kind::Inversion, r, 0};
      Poly expect(n);
      std::vector<int> e(n, 0);
      e[r] = 1;
      expect.add_term(Monomial{e, std::vector<int>(n, 0)},
                      ExactScalar(Rational(-2 * n * m.sign(r))));
      CHECK(generator_divergence(m, inv) == expect);
    }
  }
}

TEST_CASE("density action: Leibniz in the weight") {
  Rng rng(kDefaultSeed);
  for (const FlatMetric& m : {FlatMetric(2, 0), FlatMetric(1, 1)}) {
    const int n = m.n();
    for (const auto& g : conformal_generators(n)) {
      Poly f = rng.poly(n, 3, 0, 3);
      Poly h = rng.poly(n, 3, 0, 3);
      Rational lam = rng.rational();
      Rational nu = rng.rational();
      Rational sum = lam + nu;
      CHECK(lie_density(m, g, sum, f * h) ==
            lie_density(m, g, lam, f) * h + f * lie_density(m, g, nu, h));
    }
  }
  Poly bad(2);
  bad.add_term(Monomial{{0, 0}, {1, 0}}, ExactScalar(1));
  CHECK_THROWS_AS(lie_density(FlatMetric(2, 0),
                              VectorFieldGenerator{
                                  VectorFieldGenerator::Kind::Dilation, 0, 0},
                              Rational(1), bad),
                  std::invalid_argument);
}

TEST_CASE("symbol action: explicit dilation and inversion values") {
  FlatMetric m(2, 1);
  const int n = 3;
  VectorFieldGenerator dil{VectorFieldGenerator::Kind::Dilation, 0, 0};
  Rational delta = make_rational(2, 3);
  // On a monomial x^a xi^b the dilation acts by |a| - |b| + n delta.
  Poly p(n);
  p.add_term(Monomial{{2, 1, 0}, {0, 0, 1}}, ExactScalar(1));
  Rational factor = Rational(3 - 1) + Rational(n) * delta;
  CHECK(lie_symbol(m, dil, delta, p) == ExactScalar(factor) * p);

  // On constants an inversion field acts through its divergence only.
  for (int r = 0; r < n; ++r) {
    VectorFieldGenerator inv{VectorFieldGenerator::Kind::Inversion, r, 0};
    Poly one = Poly::constant(n, ExactScalar(1));
    CHECK(lie_symbol(m, inv, delta, one) ==
          ExactScalar(delta) * generator_divergence(m, inv));
  }

  // Isometries preserve the momentum quadratic form; rotations (including
  // boosts) additionally preserve the position quadratic form.
  for (const FlatMetric& mm : {FlatMetric(3, 0), FlatMetric(2, 1)}) {
    Poly rsq = op_R(mm, Poly::constant(3, ExactScalar(1)));
    Poly xsq(3);
    for (int k = 0; k < 3; ++k) {
      std::vector<int> e(3, 0);
      e[k] = 2;
      xsq.add_term(Monomial{e, std::vector<int>(3, 0)},
                   ExactScalar(Rational(mm.sign(k))));
    }
    for (const auto& g : euclidean_generators(3)) {
      CHECK(lie_symbol(mm, g, Rational(0), rsq).is_zero());
      if (g.kind == VectorFieldGenerator::Kind::Rotation) {
        CHECK(lie_symbol(mm, g, Rational(0), xsq).is_zero());
      }
    }
  }
}

TEST_CASE("symbol action closes as a Lie algebra representation") {
  Rng rng(kDefaultSeed + 7);
  for (const FlatMetric& m : {FlatMetric(2, 0), FlatMetric(1, 1)}) {
    const int n = m.n();
    auto gens = conformal_generators(n);
    Rational delta = make_rational(-1, 3);
    for (const auto& X : gens) {
      for (const auto& Y : gens) {
        auto bracket =
            field_bracket(generator_components(m, X), generator_components(m, Y));
        std::vector<Rational> c = expand_in_generators(m, gens, bracket);
        Poly P = rng.poly(n, 2, 2, 3);
        Poly lhs = lie_symbol(m, X, delta, lie_symbol(m, Y, delta, P)) -
                   lie_symbol(m, Y, delta, lie_symbol(m, X, delta, P));
        Poly rhs(n);
        for (std::size_t g = 0; g < gens.size(); ++g) {
          if (c[g] == 0) continue;
          rhs += ExactScalar(c[g]) * lie_symbol(m, gens[g], delta, P);
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("quadratic/trace/Euler operators form an sl2 triple") {
  Rng rng(kDefaultSeed + 11);
  for (const FlatMetric& m : {FlatMetric(1, 0), FlatMetric(2, 0),
                              FlatMetric(1, 1), FlatMetric(2, 1)}) {
    const int n = m.n();
    for (int t = 0; t < 10; ++t) {
      Poly P = rng.poly(n, 2, 3, 4);
      Poly four_e = ExactScalar(4) * op_E(m, P);
      CHECK(op_T(m, op_R(m, P)) - op_R(m, op_T(m, P)) == four_e);
      CHECK(op_E(m, op_R(m, P)) - op_R(m, op_E(m, P)) ==
            ExactScalar(2) * op_R(m, P));
      CHECK(op_E(m, op_T(m, P)) - op_T(m, op_E(m, P)) ==
            ExactScalar(-2) * op_T(m, P));
    }
  }
}

TEST_CASE("Casimir element commutes with the triple") {
  Rng rng(kDefaultSeed + 13);
  for (const FlatMetric& m : {FlatMetric(2, 0), FlatMetric(1, 1)}) {
    const int n = m.n();
    for (int t = 0; t < 6; ++t) {
      Poly P = rng.poly(n, 2, 3, 4);
      CHECK(op_casimir(m, op_R(m, P)) == op_R(m, op_casimir(m, P)));
      CHECK(op_casimir(m, op_T(m, P)) == op_T(m, op_casimir(m, P)));
      CHECK(op_casimir(m, op_E(m, P)) == op_E(m, op_casimir(m, P)));
    }
  }
}

TEST_CASE("invariant operators commute with isometries") {
  Rng rng(kDefaultSeed + 17);
  const Rational delta = make_rational(1, 3);
  for (const FlatMetric& m : {FlatMetric(2, 0), FlatMetric(1, 1)}) {
    const int n = m.n();
    for (const auto& g : euclidean_generators(n)) {
      Poly P = rng.poly(n, 3, 2, 4);
      for (InvariantOp op :
           {InvariantOp::R, InvariantOp::E, InvariantOp::Euler, InvariantOp::T,
            InvariantOp::G, InvariantOp::D, InvariantOp::L, InvariantOp::R0,
            InvariantOp::G0, InvariantOp::L0, InvariantOp::Casimir,
            InvariantOp::Z}) {
        CHECK(apply_invariant(op, m, lie_symbol(m, g, delta, P)) ==
              lie_symbol(m, g, delta, apply_invariant(op, m, P)));
      }
    }
  }
}

TEST_CASE("invariant operators carry definite dilation weights") {
  // [L_dil, A] = (a_x - a_xi) A  where a_x, a_xi are the degree shifts.
  Rng rng(kDefaultSeed + 19);
  FlatMetric m(2, 1);
  const int n = 3;
  VectorFieldGenerator dil{VectorFieldGenerator::Kind::Dilation, 0, 0};
  const Rational delta = make_rational(-2, 5);
  std::map<InvariantOp, int> weight = {
      {InvariantOp::R, -2},  {InvariantOp::E, 0},     {InvariantOp::Euler, 0},
      {InvariantOp::T, 2},   {InvariantOp::G, -2},    {InvariantOp::D, 0},
      {InvariantOp::L, -2},  {InvariantOp::R0, 0},    {InvariantOp::G0, 0},
      {InvariantOp::L0, 0},  {InvariantOp::Casimir, 0}, {InvariantOp::Z, -2}};
  for (const auto& [op, w] : weight) {
    Poly P = rng.poly(n, 2, 2, 4);
    Poly AP = apply_invariant(op, m, P);
    CHECK(lie_symbol(m, dil, delta, AP) -
              apply_invariant(op, m, lie_symbol(m, dil, delta, P)) ==
          ExactScalar(Rational(w)) * AP);
  }
}

TEST_CASE("cubic invariant vanishes identically in dimension 2") {
  for (const FlatMetric& m : {FlatMetric(2, 0), FlatMetric(1, 1)}) {
    for (const Poly& P : monomial_basis(2, 3, 3)) {
      CHECK(op_Z(m, P).is_zero());
    }
  }
}

TEST_CASE("cubic invariant is nonzero in dimension 3") {
  FlatMetric m(3, 0);
  bool found = false;
  Poly witness(3);
  for (const Poly& P : monomial_basis(3, 2, 2)) {
    if (!op_Z(m, P).is_zero()) {
      found = true;
      witness = P;
      break;
    }
  }
  CHECK(found);
  if (found) {
    // Also nonzero in the Lorentzian signature on the same monomial.
    CHECK(!op_Z(FlatMetric(2, 1), witness).is_zero());
  }
}

TEST_CASE("operator names round trip") {
  for (InvariantOp op :
       {InvariantOp::R, InvariantOp::E, InvariantOp::Euler, InvariantOp::T,
        InvariantOp::G, InvariantOp::D, InvariantOp::L, InvariantOp::R0,
        InvariantOp::G0, InvariantOp::L0, InvariantOp::Casimir,
        InvariantOp::Z}) {
    CHECK(parse_invariant_op(invariant_op_name(op)) == op);
  }
  CHECK_THROWS_AS(parse_invariant_op("Q"), ParseError);
}

TEST_CASE("commutators with the contracted inversion action") {
  Rng rng(kDefaultSeed + 40);
  const std::vector<Rational> deltas = {Rational(0), make_rational(1, 2),
                                        Rational(1), make_rational(5, 3),
                                        make_rational(-2, 7)};
  for (int n : {1, 2, 3}) {
    for (int p : {n, n - 1}) {
      const FlatMetric m(p, n - p);
      for (const Rational& delta : deltas) {
        for (int t = 0; t < 3; ++t) {
          const Poly P = rng.poly(n, 3, 3, 6, /*complex_coeffs=*/false);
          for (const std::string& id : commutation_relation_ids()) {
            CAPTURE(id);
            CHECK(commutation_residual(id, m, delta, P).is_zero());
          }
        }
      }
    }
  }
  CHECK_THROWS_AS(
      commutation_residual("bogus", FlatMetric(2, 0), Rational(0), Poly(2)),
      std::invalid_argument);
}

TEST_CASE("perturbing a commutator right-hand side leaves a residue") {
  // The D-relation with its Euler coefficient shifted by one fails on a
  // degree-one symbol: the mutated identity differs from the true one by
  // 2 Euler, which does not vanish on xi1.
  const FlatMetric m(2, 0);
  const Rational delta = make_rational(1, 3);
  const Poly P = Poly::var_xi(2, 0);
  const Poly true_residual = commutation_residual("D_inv", m, delta, P);
  CHECK(true_residual.is_zero());
  const Poly mutated = true_residual + ExactScalar(Rational(2)) * op_euler(P);
  CHECK(!mutated.is_zero());
}
