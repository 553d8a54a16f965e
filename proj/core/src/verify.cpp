#include "confquant/verify.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <utility>

#include "confquant/curved_quantizer.hpp"
#include "confquant/errors.hpp"
#include "confquant/flat_quantizer.hpp"
#include "confquant/geometry.hpp"
#include "confquant/invariant_ops.hpp"
#include "confquant/linsolve.hpp"

namespace confquant {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<int> dims(const VerifyOptions& opt, std::vector<int> defaults) {
  if (!opt.n) return defaults;
  return {*opt.n};
}

std::vector<FlatMetric> signatures(int n) {
  if (n == 1) return {FlatMetric(1, 0)};
  return {FlatMetric(n, 0), FlatMetric(n - 1, 1)};
}

std::vector<std::pair<Rational, Rational>> standard_weights() {
  return {{make_rational(1, 2), make_rational(1, 2)},
          {make_rational(1, 3), make_rational(3, 4)}};
}

// All monomials x^a xi^b with |a| <= x_deg, |b| <= xi_deg.
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
  out.reserve(xs.size() * xis.size());
  for (const auto& a : xs) {
    for (const auto& b : xis) {
      Poly p(n);
      p.add_term(Monomial{a, b}, ExactScalar(1));
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::string sig_str(const FlatMetric& m) {
  std::ostringstream os;
  os << "(" << m.p << "," << m.q << ")";
  return os.str();
}

std::string weight_str(const Rational& l, const Rational& u) {
  return "(" + rat_str(l) + "," + rat_str(u) + ")";
}

std::string op_summary(const DiffOperator2& r) {
  const int n = r.n;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (!r.A2[i][j].is_zero()) {
        return "A2[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
               "] = " + r.A2[i][j].str();
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!r.A1[i].is_zero()) {
      return "A1[" + std::to_string(i + 1) + "] = " + r.A1[i].str();
    }
  }
  return "A0 = " + r.A0.str();
}

Weights weights_for(const FlatMetric& m, const Rational& l, const Rational& u) {
  return Weights(m, l, u);
}

Weights random_regular_weights(Rng& rng, const FlatMetric& m) {
  const int n = m.n();
  for (;;) {
    const Rational lambda = rng.rational(6, 4);
    const Rational mu = rng.rational(6, 4);
    const Rational delta = Rational(mu - lambda);
    if (is_resonant(n, delta)) continue;
    if (n == 1 && delta == 3) continue;  // gamma chart degenerates
    return weights_for(m, lambda, mu);
  }
}

struct SuiteContext {
  VerifyReport* report;

  void run_case(const std::string& id,
                const std::function<std::string()>& residual_of) {
    ++report->cases_run;
    std::string residual = residual_of();
    if (!residual.empty()) {
      report->failures.push_back({id, std::move(residual)});
    }
  }
};

// ---------------------------------------------------------------------------
// equivariance: Q intertwines every conformal generator on every monomial
// symbol of xi-degree <= 2.

void suite_equivariance(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  for (int n : dims(opt, {1, 2, 3})) {
    for (const FlatMetric& m : signatures(n)) {
      for (const auto& [l, u] : standard_weights()) {
        QuantizationParams params(weights_for(m, l, u));
        const auto basis = monomial_basis(n, opt.max_degree, 2);
        for (const VectorFieldGenerator& X : conformal_generators(n)) {
          for (const Poly& P : basis) {
            const std::string id = "n=" + std::to_string(n) + " sig=" +
                                   sig_str(m) + " w=" + weight_str(l, u) +
                                   " X=" + generator_id(X) + " P=" + P.str();
            ctx.run_case(id, [&]() -> std::string {
              const DiffOperator2 r =
                  equivariance_residual(params, X, Symbol2(params.weights, P));
              return r.is_zero() ? std::string() : op_summary(r);
            });
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// commutators: the six inversion commutation relations, the Heisenberg
// relations, and the commutant property with respect to isometries.

void suite_commutators(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  Rng rng(opt.seed);
  const int count = opt.cases > 0 ? opt.cases : 100;
  const std::vector<Rational> deltas = {Rational(0), make_rational(1, 2),
                                        Rational(1), make_rational(5, 3),
                                        make_rational(-2, 7)};
  for (int n : dims(opt, {2, 3})) {
    for (const FlatMetric& m : signatures(n)) {
      for (int t = 0; t < count; ++t) {
        const Poly P = rng.poly(n, 3, 3, 6, /*complex_coeffs=*/false);
        const Rational& delta = deltas[t % deltas.size()];
        const std::string base = "n=" + std::to_string(n) + " sig=" +
                                 sig_str(m) + " delta=" + rat_str(delta) +
                                 " t=" + std::to_string(t);
        for (const std::string& relation : commutation_relation_ids()) {
          ctx.run_case(base + " rel=" + relation, [&]() -> std::string {
            const Poly r = commutation_residual(relation, m, delta, P);
            return r.is_zero() ? std::string() : r.str();
          });
        }

        // Heisenberg layer: [D, G] = L and L is central in it.
        ctx.run_case(base + " rel=[D,G]=L", [&]() -> std::string {
          const Poly r = op_D(op_G(m, P)) - op_G(m, op_D(P)) - op_L(m, P);
          return r.is_zero() ? std::string() : r.str();
        });
        ctx.run_case(base + " rel=[L,G]=0", [&]() -> std::string {
          const Poly r = op_L(m, op_G(m, P)) - op_G(m, op_L(m, P));
          return r.is_zero() ? std::string() : r.str();
        });
        ctx.run_case(base + " rel=[L,D]=0", [&]() -> std::string {
          const Poly r = op_L(m, op_D(P)) - op_D(op_L(m, P));
          return r.is_zero() ? std::string() : r.str();
        });

        // Commutant layer: the generators of the invariant algebra commute
        // with every isometry generator on weight-zero symbols.
        for (InvariantOp op : {InvariantOp::R, InvariantOp::E, InvariantOp::T,
                               InvariantOp::G, InvariantOp::D, InvariantOp::L}) {
          for (const VectorFieldGenerator& X : euclidean_generators(n)) {
            ctx.run_case(
                base + " op=" + invariant_op_name(op) + " X=" + generator_id(X),
                [&]() -> std::string {
                  const Poly r =
                      apply_invariant(op, m, lie_symbol(m, X, Rational(0), P)) -
                      lie_symbol(m, X, Rational(0), apply_invariant(op, m, P));
                  return r.is_zero() ? std::string() : r.str();
                });
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// ideal: Z annihilates everything in dimension two; in dimension three a
// nonzero value exists and is recorded as a note.

void suite_ideal(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  Rng rng(opt.seed);
  const int count = opt.cases > 0 ? opt.cases : 100;
  const std::vector<int> sweep = dims(opt, {2, 3});

  for (int n : sweep) {
    if (n == 2) {
      for (const FlatMetric& m : signatures(2)) {
        for (int t = 0; t < count; ++t) {
          const Poly P = rng.poly(2, 3, 3, 6, /*complex_coeffs=*/false);
          ctx.run_case(
              "n=2 sig=" + sig_str(m) + " t=" + std::to_string(t),
              [&]() -> std::string {
                const Poly r = op_Z(m, P);
                return r.is_zero() ? std::string() : r.str();
              });
        }
      }
    } else {
      // Z is not identically zero for n != 2: exhibit a witness.
      const FlatMetric m(n, 0);
      ctx.run_case("n=" + std::to_string(n) + " witness search",
                   [&]() -> std::string {
                     for (const Poly& P : monomial_basis(n, 2, 3)) {
                       const Poly z = op_Z(m, P);
                       if (!z.is_zero()) {
                         rep->notes.push_back(
                             "nonzero witness found: Z(" + P.str() +
                             ") = " + z.str() + " in dimension " +
                             std::to_string(n));
                         return {};
                       }
                     }
                     return "no nonzero value of Z found on the monomial "
                            "basis";
                   });
    }
  }
}

// ---------------------------------------------------------------------------
// system: the linear equivariance system has the closed forms as its unique
// solution off resonance, with the half-density family as a spot check.

void suite_system(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  Rng rng(opt.seed);
  const int count = opt.cases > 0 ? opt.cases : 50;
  const std::vector<int> sweep = dims(opt, {1, 2, 3, 4});

  for (int t = 0; t < count; ++t) {
    const int n = sweep[t % sweep.size()];
    const Weights w = random_regular_weights(rng, FlatMetric(n, 0));
    ctx.run_case("n=" + std::to_string(n) + " w=" +
                     weight_str(w.lambda, w.mu),
                 [&]() -> std::string {
                   const CoefficientSet cs = generic_coefficients(w);
                   const LinearSolution sol =
                       solve_equivariance_system(n, w.lambda, w.delta());
                   if (sol.kind != LinearSolution::Kind::Unique) {
                     return "system is not uniquely solvable";
                   }
                   const Vector expected = {cs.gamma1.get(), cs.gamma2.get(),
                                            cs.gamma3.get(), cs.gamma4.get(),
                                            cs.gamma5.get()};
                   if (sol.particular != expected) {
                     return "solution differs from the closed forms";
                   }
                   return {};
                 });
  }

  for (int n : dims(opt, {1, 2, 3, 4, 5, 6})) {
    ctx.run_case("half-density n=" + std::to_string(n), [&]() -> std::string {
      const CoefficientSet cs = generic_coefficients(
          weights_for(FlatMetric(n, 0), make_rational(1, 2),
                      make_rational(1, 2)));
      if (cs.gamma1.get() != 0 || cs.gamma3.get() != 0) {
        return "odd-symmetry coefficients do not vanish";
      }
      if (cs.gamma2.get() != make_rational(1, 2)) {
        return "divergence coefficient is " + rat_str(cs.gamma2.get());
      }
      if (cs.gamma4.get() != Rational(Rational(n) / (8 * (n + 1) * (n + 2)))) {
        return "trace coefficient is " + rat_str(cs.gamma4.get());
      }
      if (cs.gamma5.get() != Rational(Rational(n) / (8 * (n + 1)))) {
        return "double-divergence coefficient is " + rat_str(cs.gamma5.get());
      }
      return {};
    });
  }
}

// ---------------------------------------------------------------------------
// adjoint: the hbar map at mu = 1 - lambda produces formally self-adjoint
// operators on real symbols, and only there.

void suite_adjoint(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  Rng rng(opt.seed);
  const int count = opt.cases > 0 ? opt.cases : 12;
  const std::vector<Rational> lambdas = {Rational(0), make_rational(1, 4),
                                         make_rational(1, 2)};
  const std::vector<Rational> hbars = {Rational(1), make_rational(2, 5)};

  for (int n : dims(opt, {1, 2, 3})) {
    for (const FlatMetric& m : signatures(n)) {
      for (const Rational& lambda : lambdas) {
        for (const Rational& hbar : hbars) {
          QuantizationParams params(
              weights_for(m, lambda, Rational(1 - lambda)));
          params.hbar = hbar;
          if (is_resonant(n, params.weights.delta())) {
            params.pin_by_symmetry = true;
          }
          for (int t = 0; t < count; ++t) {
            const Poly P = rng.poly(n, 3, 2, 6, /*complex_coeffs=*/false);
            const std::string id =
                "n=" + std::to_string(n) + " sig=" + sig_str(m) + " lambda=" +
                rat_str(lambda) + " hbar=" + rat_str(hbar) + " t=" +
                std::to_string(t);
            ctx.run_case(id, [&]() -> std::string {
              const DiffOperator2 A =
                  quantize_hbar(params, Symbol2(params.weights, P));
              const DiffOperator2 r = formal_adjoint(A) - A;
              return r.is_zero() ? std::string() : op_summary(r);
            });
          }
        }
      }

      // Violation witness away from the symmetric line lambda + mu = 1.
      ctx.run_case("n=" + std::to_string(n) + " sig=" + sig_str(m) +
                       " asymmetric witness",
                   [&]() -> std::string {
                     QuantizationParams params(weights_for(
                         m, make_rational(1, 4), make_rational(1, 2)));
                     for (int t = 0; t < 8; ++t) {
                       const Poly P =
                           rng.poly(n, 3, 2, 6, /*complex_coeffs=*/false);
                       const DiffOperator2 A = quantize_hbar(
                           params, Symbol2(params.weights, P));
                       if (formal_adjoint(A) != A) return {};
                     }
                     return "no self-adjointness violation found at "
                            "lambda+mu != 1";
                   });
    }
  }
}

// ---------------------------------------------------------------------------
// conformal-invariance: the curved map depends only on the conformal class.

void suite_conformal_invariance(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  Rng rng(opt.seed);
  const int count = opt.cases > 0 ? opt.cases : 13;

  auto random_metric = [&](int n, int p) {
    for (;;) {
      RMat g = rmat_zero(n);
      RTen3 dg = rten3_zero(n);
      RTen4 ddg = rten4_zero(n);
      for (int i = 0; i < n; ++i) g[i][i] = Rational(i < p ? 1 : -1);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          g[i][j] += Rational(rng.rational(2, 3) / 4);
          g[j][i] = g[i][j];
          for (int k = 0; k < n; ++k) {
            dg[k][i][j] = rng.rational(3, 3);
            dg[k][j][i] = dg[k][i][j];
            for (int l = k; l < n; ++l) {
              ddg[k][l][i][j] = rng.rational(3, 3);
              ddg[k][l][j][i] = ddg[k][l][i][j];
              ddg[l][k][i][j] = ddg[k][l][i][j];
              ddg[l][k][j][i] = ddg[k][l][i][j];
            }
          }
        }
      }
      try {
        return MetricJet2(n, g, dg, ddg);
      } catch (const std::domain_error&) {
        continue;
      }
    }
  };
  auto random_factor = [&](int n) {
    Rational F = rng.rational(4, 3);
    if (F < 0) F = Rational(-F);
    F += 1;
    RVec dF = rvec_zero(n);
    RMat ddF = rmat_zero(n);
    for (int i = 0; i < n; ++i) {
      dF[i] = rng.rational(3, 3);
      for (int j = i; j < n; ++j) {
        ddF[i][j] = rng.rational(3, 3);
        ddF[j][i] = ddF[i][j];
      }
    }
    return ConformalFactorJet(n, F, dF, ddF);
  };
  auto random_symbol = [&](int n) {
    SymbolJet2 s = SymbolJet2::zero(n);
    for (int i = 0; i < n; ++i) {
      s.P1[i] = rng.rational(3, 3);
      for (int j = 0; j < n; ++j) s.dP1[i][j] = rng.rational(3, 3);
      for (int j = i; j < n; ++j) {
        s.P2[i][j] = rng.rational(3, 3);
        s.P2[j][i] = s.P2[i][j];
        for (int k = 0; k < n; ++k) {
          s.dP2[k][i][j] = rng.rational(3, 3);
          s.dP2[k][j][i] = s.dP2[k][i][j];
          for (int l = k; l < n; ++l) {
            s.ddP2[k][l][i][j] = rng.rational(3, 3);
            s.ddP2[k][l][j][i] = s.ddP2[k][l][i][j];
            s.ddP2[l][k][i][j] = s.ddP2[k][l][i][j];
            s.ddP2[l][k][j][i] = s.ddP2[k][l][i][j];
          }
        }
      }
    }
    s.P0 = rng.rational(3, 3);
    return s;
  };

  for (int n : dims(opt, {1, 2, 3, 4})) {
    for (const FlatMetric& base : signatures(n)) {
      for (const auto& [l, u] : standard_weights()) {
        QuantizationParams params(weights_for(base, l, u));
        for (int t = 0; t < count; ++t) {
          const std::string id = "n=" + std::to_string(n) + " sig=" +
                                 sig_str(base) + " w=" + weight_str(l, u) +
                                 " t=" + std::to_string(t);
          ctx.run_case(id, [&]() -> std::string {
            std::optional<Presentation> pres;
            MetricJet2 m = MetricJet2::flat(base);
            if (n <= 2) {
              pres = Presentation{random_factor(n), base};
              m = pres->metric_jets();
            } else {
              m = random_metric(n, base.p);
            }
            const ConformalFactorJet f = random_factor(n);
            const SymbolJet2 s = random_symbol(n);
            const Rational r =
                conformal_invariance_residual(params, m, f, s, pres);
            return r == 0 ? std::string() : rat_str(r);
          });
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// curvature-transforms: jets-then-curvature equals curvature-then-transform.

void suite_curvature_transforms(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  Rng rng(opt.seed);
  const int count = opt.cases > 0 ? opt.cases : 50;

  auto random_metric = [&](int n, int p) {
    for (;;) {
      RMat g = rmat_zero(n);
      RTen3 dg = rten3_zero(n);
      RTen4 ddg = rten4_zero(n);
      for (int i = 0; i < n; ++i) g[i][i] = Rational(i < p ? 1 : -1);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          g[i][j] += Rational(rng.rational(2, 3) / 4);
          g[j][i] = g[i][j];
          for (int k = 0; k < n; ++k) {
            dg[k][i][j] = rng.rational(3, 3);
            dg[k][j][i] = dg[k][i][j];
            for (int l = k; l < n; ++l) {
              ddg[k][l][i][j] = rng.rational(3, 3);
              ddg[k][l][j][i] = ddg[k][l][i][j];
              ddg[l][k][i][j] = ddg[k][l][i][j];
              ddg[l][k][j][i] = ddg[k][l][i][j];
            }
          }
        }
      }
      try {
        return MetricJet2(n, g, dg, ddg);
      } catch (const std::domain_error&) {
        continue;
      }
    }
  };
  auto random_factor = [&](int n) {
    Rational F = rng.rational(4, 3);
    if (F < 0) F = Rational(-F);
    F += 1;
    RVec dF = rvec_zero(n);
    RMat ddF = rmat_zero(n);
    for (int i = 0; i < n; ++i) {
      dF[i] = rng.rational(3, 3);
      for (int j = i; j < n; ++j) {
        ddF[i][j] = rng.rational(3, 3);
        ddF[j][i] = ddF[i][j];
      }
    }
    return ConformalFactorJet(n, F, dF, ddF);
  };

  for (int n : dims(opt, {2, 3, 4})) {
    for (int t = 0; t < count; ++t) {
      const int p = (t % 2 == 0) ? n : n - 1;
      const MetricJet2 m = random_metric(n, p);
      const ConformalFactorJet f = random_factor(n);
      const std::string id =
          "n=" + std::to_string(n) + " sig=(" + std::to_string(p) + "," +
          std::to_string(n - p) + ") t=" + std::to_string(t);
      ctx.run_case(id, [&]() -> std::string {
        const CurvatureData base = curvature_from_jets(m);
        const CurvatureData two = curvature_from_jets(conformal_rescale(m, f));
        if (two.Gamma != christoffel_rescaled(m, base, f)) {
          return "connection transform mismatch";
        }
        if (two.Ric != ricci_rescaled(m, base, f)) {
          return "Ricci transform mismatch";
        }
        if (two.R != scalar_curvature_rescaled(m, base, f)) {
          return "scalar curvature transform mismatch";
        }
        return {};
      });
    }
  }

  // Surface identity: the metric trace of the Schwarzian tensor of a
  // presentation is -R/2.
  if (!opt.n || *opt.n == 2) {
    for (const FlatMetric& base : signatures(2)) {
      for (int t = 0; t < 10; ++t) {
        const ConformalFactorJet F = random_factor(2);
        const MetricJet2 m = conformally_flat_jets(F, base);
        ctx.run_case("schwarzian trace sig=" + sig_str(base) + " t=" +
                         std::to_string(t),
                     [&]() -> std::string {
                       const SchwarzianTensor S = schwarzian_nd(F, m);
                       const CurvatureData c = curvature_from_jets(m);
                       Rational tr(0);
                       for (int i = 0; i < 2; ++i) {
                         for (int j = 0; j < 2; ++j) {
                           tr += c.g_inv[i][j] * S.S[i][j];
                         }
                       }
                       const Rational r = Rational(tr + c.R / 2);
                       return r == 0 ? std::string() : rat_str(r);
                     });
      }
    }
  }
}

// ---------------------------------------------------------------------------
// agreement: the component and operator charts build the same map, and any
// single-coefficient mutation breaks equivariance.

void suite_agreement(const VerifyOptions& opt, VerifyReport* rep) {
  SuiteContext ctx{rep};
  for (int n : dims(opt, {1, 2, 3})) {
    for (const FlatMetric& m : signatures(n)) {
      for (const auto& [l, u] : standard_weights()) {
        QuantizationParams params(weights_for(m, l, u));
        const auto basis = monomial_basis(n, opt.max_degree, 2);
        for (const Poly& P : basis) {
          const std::string id = "n=" + std::to_string(n) + " sig=" +
                                 sig_str(m) + " w=" + weight_str(l, u) +
                                 " P=" + P.str();
          ctx.run_case(id, [&]() -> std::string {
            const Symbol2 s(params.weights, P);
            const DiffOperator2 a = quantize_components(params, s);
            const DiffOperator2 b = quantize_ansatz(params, s);
            return a == b ? std::string() : op_summary(a - b);
          });
        }

        // Mutation probes: each coefficient is load-bearing.
        const CoefficientSet good = params.resolve();
        std::vector<std::pair<std::string, CoefficientSet>> mutants;
        auto add_mutant = [&](const std::string& name,
                              MaybeRational CoefficientSet::*field) {
          CoefficientSet bad = good;
          (bad.*field).value = Rational(*(bad.*field).value + 1);
          mutants.emplace_back(name, std::move(bad));
        };
        add_mutant("alpha", &CoefficientSet::alpha);
        if (n == 1) {
          add_mutant("b1", &CoefficientSet::one_dim_first);
          add_mutant("b0", &CoefficientSet::one_dim_zero);
        } else {
          add_mutant("beta1", &CoefficientSet::beta1);
          add_mutant("beta2", &CoefficientSet::beta2);
          add_mutant("beta3", &CoefficientSet::beta3);
          add_mutant("beta4", &CoefficientSet::beta4);
        }
        for (const auto& [name, bad] : mutants) {
          const std::string id = "n=" + std::to_string(n) + " sig=" +
                                 sig_str(m) + " w=" + weight_str(l, u) +
                                 " mutate " + name;
          ctx.run_case(id, [&]() -> std::string {
            for (const VectorFieldGenerator& X : conformal_generators(n)) {
              if (X.kind != VectorFieldGenerator::Kind::Inversion) continue;
              for (const Poly& P : basis) {
                const DiffOperator2 r =
                    equivariance_residual_with(bad, params.weights, X, P);
                if (!r.is_zero()) return {};
              }
            }
            return "mutation of " + name + " left equivariance intact";
          });
        }
      }
    }
  }
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"equivariance",         "commutators",
          "ideal",                "system",
          "adjoint",              "conformal-invariance",
          "curvature-transforms", "agreement"};
}

VerifyReport run_verify_suite(const std::string& suite,
                              const VerifyOptions& options) {
  VerifyReport rep;
  rep.suite = suite;
  rep.seed = options.seed;
  const auto start = Clock::now();

  if (suite == "equivariance") {
    suite_equivariance(options, &rep);
  } else if (suite == "commutators") {
    suite_commutators(options, &rep);
  } else if (suite == "ideal") {
    suite_ideal(options, &rep);
  } else if (suite == "system") {
    suite_system(options, &rep);
  } else if (suite == "adjoint") {
    suite_adjoint(options, &rep);
  } else if (suite == "conformal-invariance") {
    suite_conformal_invariance(options, &rep);
  } else if (suite == "curvature-transforms") {
    suite_curvature_transforms(options, &rep);
  } else if (suite == "agreement") {
    suite_agreement(options, &rep);
  } else {
    throw ParseError("unknown verify suite '" + suite + "'");
  }

  rep.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

std::vector<VerifyReport> run_all_verify_suites(const VerifyOptions& options) {
  std::vector<VerifyReport> out;
  for (const std::string& name : verify_suite_names()) {
    out.push_back(run_verify_suite(name, options));
  }
  return out;
}

}  // namespace confquant
