#include "confquant/coefficients.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include "confquant/diff_op.hpp"
#include "confquant/errors.hpp"
#include "confquant/invariant_ops.hpp"

namespace confquant {

const Rational& MaybeRational::get() const {
  if (!value) {
    throw std::logic_error("coefficient not available: " +
                           (reason.empty() ? std::string("unset") : reason));
  }
  return *value;
}

bool CoefficientSet::flat_ready() const {
  if (n == 1) {
    return alpha.has() && one_dim_first.has() && one_dim_zero.has();
  }
  return alpha.has() && beta1.has() && beta2.has() && beta3.has() &&
         beta4.has();
}

EquivarianceSystem equivariance_system(int n, const Rational& lambda,
                                       const Rational& delta) {
  if (n < 1) throw std::invalid_argument("equivariance_system: n < 1");
  const Rational nn(n);
  EquivarianceSystem sys;
  sys.M.assign(5, Vector(5, Rational(0)));
  sys.rhs.assign(5, Rational(0));
  sys.unknowns = {"gamma1", "gamma2", "gamma3", "gamma4", "gamma5"};

  // (2 - n delta) g1 - g2 - g3 = -1/2
  sys.M[0][0] = Rational(2) - nn * delta;
  sys.M[0][1] = -1;
  sys.M[0][2] = -1;
  sys.rhs[0] = make_rational(-1, 2);

  // -(n lambda) g1 + (n(1 - 2 delta) + 2) g4 - g5 = 0
  sys.M[1][0] = -nn * lambda;
  sys.M[1][3] = nn * (1 - 2 * delta) + 2;
  sys.M[1][4] = -1;

  // -(n lambda)(g2 + g3) + 2 (n(1 - delta) + 1) g5 = 0
  sys.M[2][1] = -nn * lambda;
  sys.M[2][2] = -nn * lambda;
  sys.M[2][4] = 2 * (nn * (1 - delta) + 1);

  // (1 - delta) g2 = lambda
  sys.M[3][1] = Rational(1) - delta;
  sys.rhs[3] = lambda;

  // (2 + n(1 - delta)) (g2 + g3) = n lambda + 1
  sys.M[4][1] = Rational(2) + nn * (1 - delta);
  sys.M[4][2] = sys.M[4][1];
  sys.rhs[4] = nn * lambda + 1;
  return sys;
}

LinearSolution solve_equivariance_system(int n, const Rational& lambda,
                                         const Rational& delta) {
  EquivarianceSystem sys = equivariance_system(n, lambda, delta);
  return solve_exact(sys.M, sys.rhs);
}

namespace {

// ---------------------------------------------------------------------
// Parametric (lambda-free) analysis.
//
// The inputs are systems whose entries are affine in lambda.  We determine
// the rational lambdas at which the system is consistent.  The method is
// sound and complete over Q:
//   * the generic ranks of M and [M|b] over Q(lambda) are certified by
//     exact evaluation at enough distinct sample points (a k x k minor is
//     a polynomial of degree <= k, so with more samples than possible
//     exceptional points, the maximum observed rank is the generic rank);
//   * any lambda where rank[M|b] or rank M drops below generic is a root
//     of every maximal minor, in particular of one certified nonzero
//     minor, whose rational roots we extract exactly;
//   * each candidate lambda is then re-checked by an exact solve of the
//     full system.
// ---------------------------------------------------------------------

struct ParametricSystem {
  // rows[r][c] for c < k are the unknown coefficients, rows[r][k] is the
  // right-hand side; every entry is a polynomial in lambda.
  std::vector<std::vector<UniPoly>> rows;
  int k = 0;  // number of unknowns
};

Matrix instantiate_matrix(const ParametricSystem& sys, const Rational& lam) {
  Matrix M(sys.rows.size(), Vector(sys.k, Rational(0)));
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    for (int c = 0; c < sys.k; ++c) {
      M[r][c] = up_eval(sys.rows[r][c], lam);
    }
  }
  return M;
}

Vector instantiate_rhs(const ParametricSystem& sys, const Rational& lam) {
  Vector b(sys.rows.size(), Rational(0));
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    b[r] = up_eval(sys.rows[r][sys.k], lam);
  }
  return b;
}

// Pivot rows/columns of an exact elimination on the given matrix; the
// selected square submatrix is nonsingular.
void pivot_sets(Matrix A, std::vector<int>* rows_out,
                std::vector<int>* cols_out) {
  rows_out->clear();
  cols_out->clear();
  if (A.empty()) return;
  const int m = static_cast<int>(A.size());
  const int k = static_cast<int>(A[0].size());
  std::vector<int> row_label(m);
  for (int r = 0; r < m; ++r) row_label[r] = r;
  int row = 0;
  for (int col = 0; col < k && row < m; ++col) {
    int piv = -1;
    for (int r = row; r < m; ++r) {
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(A[piv], A[row]);
    std::swap(row_label[piv], row_label[row]);
    Rational inv = 1 / A[row][col];
    for (int c = col; c < k; ++c) A[row][c] *= inv;
    for (int r = row + 1; r < m; ++r) {
      if (A[r][col] == 0) continue;
      Rational f = A[r][col];
      for (int c = col; c < k; ++c) A[r][c] -= f * A[row][c];
    }
    rows_out->push_back(row_label[row]);
    cols_out->push_back(col);
    ++row;
  }
}

LambdaFreeResult lambda_free_analysis(const ParametricSystem& sys) {
  LambdaFreeResult out;
  const int k = sys.k;

  // Enough distinct samples to certify generic ranks: ranks can drop below
  // generic at most at deg(minor) <= min(m, k+1) points per matrix.
  const int max_rank = std::min<int>(static_cast<int>(sys.rows.size()), k + 1);
  const int n_samples = 2 * max_rank + 5;
  int rank_m = 0, rank_aug = 0;
  Rational good_sample;
  bool have_good = false;
  std::vector<std::pair<Rational, std::pair<int, int>>> sampled;
  for (int s = 0; s < n_samples; ++s) {
    Rational lam(17 + s);
    Matrix M = instantiate_matrix(sys, lam);
    Vector b = instantiate_rhs(sys, lam);
    Matrix aug = M;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
    int rm = rank_exact(M);
    int ra = rank_exact(aug);
    sampled.push_back({lam, {rm, ra}});
    rank_m = std::max(rank_m, rm);
    rank_aug = std::max(rank_aug, ra);
  }
  for (const auto& [lam, rr] : sampled) {
    if (rr.first == rank_m && rr.second == rank_aug) {
      good_sample = lam;
      have_good = true;
      break;
    }
  }
  if (!have_good) {
    throw std::logic_error("lambda_free_analysis: no generic sample found");
  }

  out.generically_solvable = (rank_aug == rank_m);
  out.generic_family_dim = out.generically_solvable ? k - rank_m : -1;

  // Certified nonzero maximal minors of M and [M|b] as polynomials in
  // lambda; their rational roots are the only possible special lambdas.
  std::set<Rational> cand;
  auto add_minor_roots = [&](bool with_rhs) {
    Matrix A = instantiate_matrix(sys, good_sample);
    if (with_rhs) {
      Vector b = instantiate_rhs(sys, good_sample);
      for (std::size_t r = 0; r < A.size(); ++r) A[r].push_back(b[r]);
    }
    std::vector<int> prows, pcols;
    pivot_sets(std::move(A), &prows, &pcols);
    if (prows.empty()) return;  // zero matrix: no special lambdas from it
    std::vector<std::vector<UniPoly>> sub(prows.size());
    for (std::size_t r = 0; r < prows.size(); ++r) {
      for (int c : pcols) sub[r].push_back(sys.rows[prows[r]][c]);
    }
    UniPoly det = up_det(sub);
    if (up_is_zero(det) || up_eval(det, good_sample) == 0) {
      throw std::logic_error("lambda_free_analysis: minor certification failed");
    }
    for (const Rational& root : up_rational_roots(det)) cand.insert(root);
  };
  add_minor_roots(false);
  add_minor_roots(true);

  out.candidates.assign(cand.begin(), cand.end());
  for (const Rational& lam : out.candidates) {
    LinearSolution sol =
        solve_exact(instantiate_matrix(sys, lam), instantiate_rhs(sys, lam));
    const bool ok = sol.kind != LinearSolution::Kind::None;
    if (out.generically_solvable) {
      if (!ok) out.generic_exceptions.push_back(lam);
    } else if (ok) {
      out.solvable.push_back(
          {lam, static_cast<int>(sol.nullspace.size())});
    }
  }
  return out;
}

ParametricSystem gamma_parametric_system(int n, const Rational& delta) {
  // Entries of the five-equation system are affine in lambda; reconstruct
  // the linear polynomials from evaluations at lambda = 0 and 1.
  EquivarianceSystem s0 = equivariance_system(n, Rational(0), delta);
  EquivarianceSystem s1 = equivariance_system(n, Rational(1), delta);
  ParametricSystem sys;
  sys.k = 5;
  for (int r = 0; r < 5; ++r) {
    std::vector<UniPoly> row;
    for (int c = 0; c < 5; ++c) {
      row.push_back(up_linear(s0.M[r][c], s1.M[r][c] - s0.M[r][c]));
    }
    row.push_back(up_linear(s0.rhs[r], s1.rhs[r] - s0.rhs[r]));
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

// ---------------------------------------------------------------------
// Component-chart conditions assembled from equivariance residuals.
// ---------------------------------------------------------------------

// All monomial symbols x^a xi^b with |a| <= x_deg and |b| <= 2.
std::vector<Poly> monomial_symbols(int n, int x_deg) {
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
  gen(0, 2, &xis);
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

// Rows of the component-chart conditions: for every inversion generator
// and basis symbol, the residual
//   B(L^delta P) - L^{lambda,mu}(B(P))
// of each ansatz block B is expanded; matching coefficients gives linear
// equations  M u = rhs  for u = (alpha, beta1..beta4).  Several lambdas
// are processed in one traversal over a shared monomial support so the
// emitted rows stay aligned across lambdas (term supports differ between
// special lambda values, so per-lambda assembly would not line up).
void component_rows(const FlatMetric& m, const std::vector<Rational>& lambdas,
                    const Rational& delta, int x_deg,
                    std::vector<std::vector<std::array<Rational, 6>>>* rows) {
  const int n = m.n();
  rows->assign(lambdas.size(), {});
  std::vector<Poly> basis = monomial_symbols(n, x_deg);

  for (int r = 0; r < n; ++r) {
    VectorFieldGenerator inv{VectorFieldGenerator::Kind::Inversion, r, 0};
    for (const Poly& P : basis) {
      SymbolComponents cP = split_symbol(P);
      SymbolComponents cLP = split_symbol(lie_symbol(m, inv, delta, P));

      std::vector<DiffOperator2> blocksP = {
          block_identity(cP),    block_alpha(cP),      block_beta1(cP),
          block_beta2(m, cP),    block_beta3(cP),      block_beta4(m, cP)};
      std::vector<DiffOperator2> blocksLP = {
          block_identity(cLP),   block_alpha(cLP),     block_beta1(cLP),
          block_beta2(m, cLP),   block_beta3(cLP),     block_beta4(m, cLP)};

      // res[l][b]: residual of block b at lambdas[l].
      std::vector<std::vector<DiffOperator2>> res;
      for (const Rational& lambda : lambdas) {
        const Rational mu = lambda + delta;
        std::vector<DiffOperator2> row;
        for (std::size_t b = 0; b < blocksP.size(); ++b) {
          row.push_back(blocksLP[b] -
                        lie_operator_defn(m, inv, lambda, mu, blocksP[b]));
        }
        res.push_back(std::move(row));
      }

      auto slot_polys = [&](const DiffOperator2& op) {
        std::vector<const Poly*> slots;
        for (int i = 0; i < n; ++i) {
          for (int j = i; j < n; ++j) slots.push_back(&op.A2[i][j]);
        }
        for (int i = 0; i < n; ++i) slots.push_back(&op.A1[i]);
        slots.push_back(&op.A0);
        return slots;
      };

      const std::size_t n_blocks = blocksP.size();
      const std::size_t n_slots = slot_polys(res[0][0]).size();
      for (std::size_t s = 0; s < n_slots; ++s) {
        // Shared support over every lambda and block.
        std::set<Monomial, MonomialOrder> monos;
        for (const auto& per_lambda : res) {
          for (const auto& op : per_lambda) {
            for (const auto& [mono, c] : slot_polys(op)[s]->terms()) {
              monos.insert(mono);
            }
          }
        }
        for (const Monomial& mono : monos) {
          bool nonzero = false;
          std::vector<std::array<Rational, 6>> per_lambda_rows(lambdas.size());
          for (std::size_t l = 0; l < lambdas.size(); ++l) {
            for (std::size_t b = 0; b < n_blocks; ++b) {
              ExactScalar c = slot_polys(res[l][b])[s]->coeff(mono);
              if (!c.is_real()) {
                throw std::logic_error("component_rows: complex residual");
              }
              Rational cr = c.re();
              if (b == 0) {
                per_lambda_rows[l][5] = -cr;  // identity block: rhs
              } else {
                per_lambda_rows[l][b - 1] = cr;
              }
              if (cr != 0) nonzero = true;
            }
          }
          if (nonzero) {
            for (std::size_t l = 0; l < lambdas.size(); ++l) {
              (*rows)[l].push_back(per_lambda_rows[l]);
            }
          }
        }
      }
    }
  }
}

constexpr int kComponentBasisDegree = 3;

}  // namespace

ComponentSystem component_equivariance_system(const FlatMetric& m,
                                              const Rational& lambda,
                                              const Rational& delta,
                                              int x_degree) {
  std::vector<std::vector<std::array<Rational, 6>>> raw;
  component_rows(m, {lambda}, delta, x_degree, &raw);
  std::set<std::array<Rational, 6>> dedup(raw[0].begin(), raw[0].end());
  ComponentSystem sys;
  sys.unknowns = {"alpha", "beta1", "beta2", "beta3", "beta4"};
  for (const auto& row : dedup) {
    sys.M.push_back(Vector(row.begin(), row.begin() + 5));
    sys.rhs.push_back(row[5]);
  }
  return sys;
}

LambdaFreeResult component_system_lambda_free(const FlatMetric& m,
                                              const Rational& delta) {
  // Residuals are affine in lambda (the Lie action on operators is), so
  // aligned rows at lambda = 0 and 1 determine the parametric system.
  std::vector<std::vector<std::array<Rational, 6>>> raw;
  component_rows(m, {Rational(0), Rational(1)}, delta, kComponentBasisDegree,
                 &raw);
  std::set<std::vector<Rational>> dedup;
  for (std::size_t r = 0; r < raw[0].size(); ++r) {
    std::vector<Rational> key;
    key.reserve(12);
    for (int c = 0; c < 6; ++c) key.push_back(raw[0][r][c]);
    for (int c = 0; c < 6; ++c) key.push_back(raw[1][r][c]);
    dedup.insert(std::move(key));
  }
  ParametricSystem sys;
  sys.k = 5;
  for (const auto& key : dedup) {
    std::vector<UniPoly> row;
    for (int c = 0; c < 6; ++c) {
      row.push_back(up_linear(key[c], key[6 + c] - key[c]));
    }
    sys.rows.push_back(std::move(row));
  }
  return lambda_free_analysis(sys);
}

LambdaFreeResult solve_equivariance_system_lambda_free(int n,
                                                       const Rational& delta) {
  return lambda_free_analysis(gamma_parametric_system(n, delta));
}

ResonanceInfo classify_resonance(int n, const Rational& delta) {
  // The parametric analysis is exact but not cheap; admissibility queries
  // repeat for the same (n, delta), so memoize.
  static std::mutex cache_mutex;
  static std::map<std::pair<int, Rational>, ResonanceInfo> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({n, delta});
    if (it != cache.end()) return it->second;
  }

  ResonanceInfo info;
  info.delta = delta;
  info.resonant = is_resonant(n, delta);
  if (!info.resonant) return info;

  FlatMetric m(n, 0);
  LambdaFreeResult comp = component_system_lambda_free(m, delta);
  if (comp.generically_solvable) {
    throw std::logic_error(
        "classify_resonance: resonant shift is generically solvable");
  }
  for (const auto& e : comp.solvable) {
    info.admissible_pairs.emplace_back(e.lambda, e.lambda + delta);
  }

  if (n >= 2) {
    // The operator chart must agree with the component chart for n >= 2,
    // including the dimension of the solution family at each admissible
    // weight (the two charts differ by an invertible linear map).
    LambdaFreeResult gam = solve_equivariance_system_lambda_free(n, delta);
    auto key = [](const LambdaFreeResult& r) {
      std::vector<std::pair<Rational, int>> k;
      for (const auto& e : r.solvable) k.emplace_back(e.lambda, e.family_dim);
      std::sort(k.begin(), k.end());
      return k;
    };
    if (gam.generically_solvable || key(comp) != key(gam)) {
      throw std::logic_error(
          "classify_resonance: coefficient charts disagree on admissible "
          "weights");
    }
  }
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[{n, delta}] = info;
  }
  return info;
}

// ---------------------------------------------------------------------
// Closed forms.
// ---------------------------------------------------------------------

namespace {

struct Denominators {
  Rational one_minus_delta;       // 1 - delta
  Rational a_beta1;               // 2 + n(1 - delta)
  Rational a_beta3;               // 1 + n(1 - delta)
  Rational a_beta4;               // 2 + n(1 - 2 delta)
  Rational a_trace;               // 2 - n delta
};

Denominators denominators(int n, const Rational& delta) {
  const Rational nn(n);
  Denominators d;
  d.one_minus_delta = Rational(1) - delta;
  d.a_beta1 = Rational(2) + nn * (1 - delta);
  d.a_beta3 = Rational(1) + nn * (1 - delta);
  d.a_beta4 = Rational(2) + nn * (1 - 2 * delta);
  d.a_trace = Rational(2) - nn * delta;
  return d;
}

void set_value(MaybeRational* slot, const Rational& v) { slot->value = v; }

void set_reason(MaybeRational* slot, const std::string& why) {
  slot->value.reset();
  slot->reason = why;
}

std::string rat_pair(const Rational& a, const Rational& b) {
  return "(" + rat_str(a) + ", " + rat_str(b) + ")";
}

// Verifies that the gamma values solve the five-equation system exactly.
void verify_gammas_against_system(int n, const Rational& lambda,
                                  const Rational& delta,
                                  const std::vector<Rational>& g) {
  EquivarianceSystem sys = equivariance_system(n, lambda, delta);
  for (int r = 0; r < 5; ++r) {
    Rational acc(0);
    for (int c = 0; c < 5; ++c) acc += sys.M[r][c] * g[c];
    if (acc != sys.rhs[r]) {
      throw std::logic_error(
          "coefficients: closed-form gammas fail the equivariance system");
    }
  }
}

void fill_betas_from_gammas(CoefficientSet* cs) {
  const Rational& g1 = cs->gamma1.get();
  const Rational& g2 = cs->gamma2.get();
  const Rational& g3 = cs->gamma3.get();
  const Rational& g4 = cs->gamma4.get();
  const Rational& g5 = cs->gamma5.get();
  set_value(&cs->alpha, g2);
  set_value(&cs->beta1, 2 * (g2 + g3));
  set_value(&cs->beta2, 2 * g1);
  set_value(&cs->beta3, 2 * g5);
  set_value(&cs->beta4, 2 * g4);
}

void fill_curvature_coefficients(CoefficientSet* cs) {
  const int n = cs->n;
  const Rational nn(n);
  const Rational& lambda = cs->lambda;
  const Rational& mu = cs->mu;
  const Rational& delta = cs->delta;
  Denominators d = denominators(n, delta);

  if (n >= 3) {
    if (d.a_beta3 != 0) {
      set_value(&cs->beta5,
                nn * nn * lambda * (mu - 1) / ((nn - 2) * d.a_beta3));
    } else {
      set_reason(&cs->beta5, "curvature coefficient is singular at this shift");
    }
    if (d.a_beta3 != 0 && d.a_beta4 != 0) {
      set_value(&cs->beta6, nn * nn * lambda * (mu - 1) * (nn * delta - 2) /
                                ((nn - 1) * (nn - 2) * d.a_beta3 * d.a_beta4));
    } else {
      set_reason(&cs->beta6, "curvature coefficient is singular at this shift");
    }
  } else {
    const std::string why =
        "tensor curvature coefficients require n >= 3; dimensions 1 and 2 "
        "use a conformally flat presentation";
    set_reason(&cs->beta5, why);
    set_reason(&cs->beta6, why);
  }

  if (n >= 2) {
    Rational denom = (nn - 1) * (nn + 2 - 2 * nn * delta);
    if (denom != 0) {
      set_value(&cs->geodesic_scalar, nn * nn * lambda * (mu - 1) / denom);
    } else if (nn * nn * lambda * (mu - 1) == 0) {
      // 0/0 limit: realized as 0 by the resonant construction.
      set_value(&cs->geodesic_scalar, Rational(0));
    } else {
      set_reason(&cs->geodesic_scalar,
                 "scalar curvature multiplier is singular at this shift");
    }
  } else {
    set_reason(&cs->geodesic_scalar,
               "no scalar curvature in dimension 1; the Schwarzian term "
               "carries the curvature correction");
  }
}

}  // namespace

CoefficientSet generic_coefficients(const Weights& w) {
  const int n = w.n();
  const Rational lambda = w.lambda;
  const Rational mu = w.mu;
  const Rational delta = w.delta();
  if (is_resonant(n, delta)) {
    throw std::invalid_argument(
        "generic_coefficients: resonant shift delta = " + rat_str(delta) +
        "; use resonant_coefficients");
  }
  const Rational nn(n);
  Denominators d = denominators(n, delta);

  CoefficientSet cs;
  cs.n = n;
  cs.lambda = lambda;
  cs.mu = mu;
  cs.delta = delta;
  cs.resonant = false;

  // The five-parameter operator chart.  For n = 1 it develops a spurious
  // pole at delta = 3 (the blocks become linearly dependent and the chart
  // denominators n(delta-1)-1, n(delta-1)-2 vanish without any resonance).
  const Rational cg1 = nn * (delta - 1) - 1;  // n(delta-1) - 1
  const Rational cg2 = nn * (delta - 1) - 2;  // n(delta-1) - 2
  const bool chart_ok = (cg1 != 0 && cg2 != 0);
  if (chart_ok) {
    Rational g1 = nn * (lambda + mu - 1) / (2 * (nn * delta - 2) * cg2);
    Rational g2 = lambda / d.one_minus_delta;
    Rational g3 = (1 - lambda - mu) / ((delta - 1) * cg2);
    Rational g4 = nn * lambda *
                  (2 + (4 * lambda - 1) * nn +
                   (2 * lambda * lambda - lambda * mu - mu * mu + 2 * mu - 1) *
                       nn * nn) /
                  (2 * cg1 * (nn * (2 * delta - 1) - 2) * (nn * delta - 2) *
                   cg2);
    Rational g5 = nn * lambda * (nn * lambda + 1) / (2 * cg1 * cg2);
    verify_gammas_against_system(n, lambda, delta, {g1, g2, g3, g4, g5});
    set_value(&cs.gamma1, g1);
    set_value(&cs.gamma2, g2);
    set_value(&cs.gamma3, g3);
    set_value(&cs.gamma4, g4);
    set_value(&cs.gamma5, g5);
    fill_betas_from_gammas(&cs);
  } else {
    const std::string why =
        "operator chart degenerates at n = 1, delta = 3; the effective "
        "one-dimensional coefficients stay regular";
    for (MaybeRational* slot : {&cs.gamma1, &cs.gamma2, &cs.gamma3, &cs.gamma4,
                                &cs.gamma5, &cs.beta1, &cs.beta2, &cs.beta3,
                                &cs.beta4}) {
      set_reason(slot, why);
    }
    set_value(&cs.alpha, lambda / d.one_minus_delta);
  }

  // Cross-check the component chart against its independent closed forms.
  if (chart_ok) {
    Rational beta1 = 2 * (nn * lambda + 1) / d.a_beta1;
    Rational beta2 = nn * (lambda + mu - 1) / (d.a_beta1 * d.a_trace);
    Rational beta3 =
        nn * lambda * (nn * lambda + 1) / (d.a_beta3 * d.a_beta1);
    Rational beta4 = nn * lambda *
                     (nn * nn * mu * (2 - lambda - mu) +
                      2 * (nn * lambda + 1) * (nn * lambda + 1) - nn * (nn + 1)) /
                     (d.a_beta3 * d.a_beta1 * d.a_beta4 * d.a_trace);
    if (cs.alpha.get() != lambda / d.one_minus_delta ||
        cs.beta1.get() != beta1 || cs.beta2.get() != beta2 ||
        cs.beta3.get() != beta3 || cs.beta4.get() != beta4) {
      throw std::logic_error(
          "coefficients: operator and component charts disagree");
    }
  }

  if (n == 1) {
    Rational b1 = (2 * lambda + 1) / (Rational(2) - delta);
    Rational b0 = lambda * (2 * lambda + 1) /
                  ((Rational(3) - 2 * delta) * (Rational(2) - delta));
    set_value(&cs.one_dim_first, b1);
    set_value(&cs.one_dim_zero, b0);
    if (chart_ok) {
      if (b1 != cs.beta1.get() + cs.beta2.get() ||
          b0 != cs.beta3.get() + cs.beta4.get()) {
        throw std::logic_error(
            "coefficients: one-dimensional effective coefficients disagree "
            "with the component chart");
      }
    }
  } else {
    set_reason(&cs.one_dim_first, "only defined for n = 1");
    set_reason(&cs.one_dim_zero, "only defined for n = 1");
  }

  fill_curvature_coefficients(&cs);
  return cs;
}

// ---------------------------------------------------------------------
// Resonant families.
// ---------------------------------------------------------------------

namespace {

// Affine family x = p + N t in named coordinates: evaluates coordinate
// functionals, imposes linear constraints on t, and reports which named
// coordinates stay free.
struct AffineFamily {
  Vector particular;
  std::vector<Vector> basis;  // columns of N

  int dim() const { return static_cast<int>(basis.size()); }

  // Row vector c: the functional x -> sum_i c_i x_i as (c . p, c . N).
  std::pair<Rational, Vector> functional(const Vector& c) const {
    Rational c0(0);
    for (std::size_t i = 0; i < particular.size(); ++i) {
      c0 += c[i] * particular[i];
    }
    Vector cn(basis.size(), Rational(0));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      for (std::size_t i = 0; i < particular.size(); ++i) {
        cn[b] += c[i] * basis[b][i];
      }
    }
    return {c0, cn};
  }

  // Imposes sum_i c_i x_i = v; returns false when inconsistent.
  bool constrain(const Vector& c, const Rational& v) {
    auto [c0, cn] = functional(c);
    // Find a basis direction with nonzero coefficient and eliminate it.
    int piv = -1;
    for (std::size_t b = 0; b < cn.size(); ++b) {
      if (cn[b] != 0) {
        piv = static_cast<int>(b);
        break;
      }
    }
    if (piv < 0) return c0 == v;  // constant functional on the family
    Rational inv = 1 / cn[piv];
    // Shift the particular point onto the constraint surface.
    Rational t = (v - c0) * inv;
    for (std::size_t i = 0; i < particular.size(); ++i) {
      particular[i] += t * basis[piv][i];
    }
    // Project the remaining directions into the constraint.
    std::vector<Vector> nb;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (static_cast<int>(b) == piv) continue;
      Vector dir = basis[b];
      Rational f = cn[b] * inv;
      for (std::size_t i = 0; i < dir.size(); ++i) {
        dir[i] -= f * basis[piv][i];
      }
      nb.push_back(std::move(dir));
    }
    basis = std::move(nb);
    return true;
  }

  // Whether the coordinate functional c is constant over the family, and
  // its value at the particular point.
  std::pair<bool, Rational> coordinate(const Vector& c) const {
    auto [c0, cn] = functional(c);
    for (const Rational& x : cn) {
      if (x != 0) return {false, c0};
    }
    return {true, c0};
  }
};

Vector unit_row(int k, int i) {
  Vector v(k, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace

CoefficientSet resonant_coefficients(
    const Weights& w, const std::map<std::string, Rational>& free_values,
    bool pin_by_symmetry) {
  const int n = w.n();
  const Rational lambda = w.lambda;
  const Rational mu = w.mu;
  const Rational delta = w.delta();
  if (!is_resonant(n, delta)) {
    throw std::invalid_argument(
        "resonant_coefficients: delta = " + rat_str(delta) +
        " is not resonant; use generic_coefficients");
  }

  ResonanceInfo info = classify_resonance(n, delta);
  bool admissible = false;
  for (const auto& [l, u] : info.admissible_pairs) {
    if (l == lambda && u == mu) admissible = true;
  }
  if (!admissible) {
    std::ostringstream msg;
    msg << "weights " << rat_pair(lambda, mu)
        << " are not admissible at resonant shift delta = " << rat_str(delta)
        << "; admissible pairs:";
    for (const auto& [l, u] : info.admissible_pairs) {
      msg << " " << rat_pair(l, u);
    }
    throw InadmissiblePairError(msg.str());
  }

  CoefficientSet cs;
  cs.n = n;
  cs.lambda = lambda;
  cs.mu = mu;
  cs.delta = delta;
  cs.resonant = true;

  if (pin_by_symmetry && lambda + mu != 1) {
    throw ResonanceUnresolvedError(
        "pin_by_symmetry requires lambda + mu = 1 (self-adjointness); got "
        "lambda + mu = " +
        rat_str(lambda + mu));
  }

  if (n >= 2) {
    LinearSolution sol = solve_equivariance_system(n, lambda, delta);
    if (sol.kind == LinearSolution::Kind::None) {
      throw std::logic_error(
          "resonant_coefficients: admissible weights yield an inconsistent "
          "system");
    }
    AffineFamily fam{sol.particular, sol.nullspace};

    std::vector<std::string> names;
    if (delta == 1 && n == 2) {
      names = {"gamma1", "gamma3", "gamma4"};
    } else if (delta == 1) {
      names = {"gamma3"};
    } else {
      names = {"gamma4"};
    }
    if (fam.dim() != static_cast<int>(names.size())) {
      throw std::logic_error(
          "resonant_coefficients: unexpected family dimension");
    }

    auto coord_row = [&](const std::string& name) {
      if (name == "gamma1") return unit_row(5, 0);
      if (name == "gamma3") return unit_row(5, 2);
      if (name == "gamma4") return unit_row(5, 3);
      throw std::invalid_argument(
          "resonant_coefficients: unknown parameter '" + name + "'");
    };

    if (pin_by_symmetry) {
      // alpha = 1/2, beta1 = 1, beta2 = 0 in chart coordinates:
      // gamma2 = 1/2, gamma2 + gamma3 = 1/2, gamma1 = 0.
      Vector g2 = unit_row(5, 1);
      Vector g23 = unit_row(5, 1);
      g23[2] = 1;
      Vector g1 = unit_row(5, 0);
      if (!fam.constrain(g2, make_rational(1, 2)) ||
          !fam.constrain(g23, make_rational(1, 2)) ||
          !fam.constrain(g1, Rational(0))) {
        throw ResonanceUnresolvedError(
            "symmetry pinning is inconsistent with the resonant family");
      }
    }
    for (const auto& [name, value] : free_values) {
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw std::invalid_argument(
            "resonant_coefficients: '" + name +
            "' is not a free parameter of this family");
      }
      if (!fam.constrain(coord_row(name), value)) {
        throw ResonanceUnresolvedError(
            "assigned value for '" + name +
            "' is inconsistent with the resonant family");
      }
    }

    // Read off coordinates; free ones are reported without values.
    std::vector<MaybeRational*> slots = {&cs.gamma1, &cs.gamma2, &cs.gamma3,
                                         &cs.gamma4, &cs.gamma5};
    std::vector<Rational> resolved(5, Rational(0));
    bool all_fixed = true;
    for (int i = 0; i < 5; ++i) {
      auto [fixed, value] = fam.coordinate(unit_row(5, i));
      if (fixed) {
        set_value(slots[i], value);
        resolved[i] = value;
      } else {
        set_reason(slots[i], "free parameter of the resonant family");
        all_fixed = false;
      }
    }
    for (const std::string& name : names) {
      auto [fixed, value] = fam.coordinate(coord_row(name));
      FreeParameter fp;
      fp.name = name;
      if (fixed) fp.value = value;
      cs.free_parameters.push_back(std::move(fp));
    }
    if (all_fixed) {
      verify_gammas_against_system(n, lambda, delta, resolved);
      fill_betas_from_gammas(&cs);
    } else {
      // Partially resolved: propagate what is constant over the family.
      auto set_combo = [&](MaybeRational* slot, const Vector& row,
                           const Rational& scale) {
        auto [fixed, value] = fam.coordinate(row);
        if (fixed) {
          set_value(slot, scale * value);
        } else {
          set_reason(slot, "depends on an unresolved free parameter");
        }
      };
      set_combo(&cs.alpha, unit_row(5, 1), Rational(1));
      Vector g23 = unit_row(5, 1);
      g23[2] = 1;
      set_combo(&cs.beta1, g23, Rational(2));
      set_combo(&cs.beta2, unit_row(5, 0), Rational(2));
      set_combo(&cs.beta3, unit_row(5, 4), Rational(2));
      set_combo(&cs.beta4, unit_row(5, 3), Rational(2));
    }
    set_reason(&cs.one_dim_first, "only defined for n = 1");
    set_reason(&cs.one_dim_zero, "only defined for n = 1");
  } else {
    // n = 1: the operator chart is not faithful; work with the component
    // conditions and the effective coordinates alpha, b1 = beta1 + beta2,
    // b0 = beta3 + beta4.
    ComponentSystem sys = component_equivariance_system(w.metric, lambda, delta);
    LinearSolution sol = solve_exact(sys.M, sys.rhs);
    if (sol.kind == LinearSolution::Kind::None) {
      throw std::logic_error(
          "resonant_coefficients: admissible weights yield an inconsistent "
          "system");
    }
    AffineFamily fam{sol.particular, sol.nullspace};
    // Effective coordinate functionals on (alpha, beta1..beta4).  Two
    // nullspace directions are pure gauge (the paired blocks coincide in
    // dimension 1), so the true family has fam.dim() - 2 parameters.
    Vector row_alpha = unit_row(5, 0);
    Vector row_b1 = unit_row(5, 1);
    row_b1[2] = 1;
    Vector row_b0 = unit_row(5, 3);
    row_b0[4] = 1;

    std::vector<std::pair<std::string, Vector>> eff = {
        {"alpha", row_alpha}, {"b1", row_b1}, {"b0", row_b0}};
    auto coord_row = [&](const std::string& name) -> const Vector& {
      for (const auto& e : eff) {
        if (e.first == name) return e.second;
      }
      throw std::invalid_argument(
          "resonant_coefficients: '" + name +
          "' is not a parameter of the one-dimensional family");
    };

    std::vector<std::string> names;
    if (delta == 1) {
      names = {"alpha"};
    } else if (delta == make_rational(3, 2)) {
      names = {"b0"};
    } else {
      names = {"b1"};
    }
    if (fam.dim() != 2 + static_cast<int>(names.size())) {
      throw std::logic_error(
          "resonant_coefficients: unexpected family dimension");
    }

    if (pin_by_symmetry) {
      if (!fam.constrain(row_alpha, make_rational(1, 2)) ||
          !fam.constrain(row_b1, Rational(1))) {
        throw ResonanceUnresolvedError(
            "symmetry pinning is inconsistent with the resonant family");
      }
    }
    for (const auto& [name, value] : free_values) {
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw std::invalid_argument(
            "resonant_coefficients: '" + name +
            "' is not a free parameter of this family");
      }
      if (!fam.constrain(coord_row(name), value)) {
        throw ResonanceUnresolvedError(
            "assigned value for '" + name +
            "' is inconsistent with the resonant family");
      }
    }

    std::vector<MaybeRational*> slots = {&cs.alpha, &cs.one_dim_first,
                                         &cs.one_dim_zero};
    for (std::size_t i = 0; i < eff.size(); ++i) {
      auto [fixed, value] = fam.coordinate(eff[i].second);
      if (fixed) {
        set_value(slots[i], value);
      } else {
        set_reason(slots[i], "depends on an unresolved free parameter");
      }
    }
    for (const std::string& name : names) {
      auto [fixed, value] = fam.coordinate(coord_row(name));
      FreeParameter fp;
      fp.name = name;
      if (fixed) fp.value = value;
      cs.free_parameters.push_back(std::move(fp));
    }
    const std::string why =
        "only the combined one-dimensional coefficients are defined over "
        "the resonant family";
    for (MaybeRational* slot : {&cs.gamma1, &cs.gamma2, &cs.gamma3, &cs.gamma4,
                                &cs.gamma5, &cs.beta1, &cs.beta2, &cs.beta3,
                                &cs.beta4}) {
      set_reason(slot, why);
    }
  }

  fill_curvature_coefficients(&cs);
  return cs;
}

CoefficientSet coefficients_for(
    const Weights& w, const std::map<std::string, Rational>& free_values,
    bool pin_by_symmetry) {
  if (is_resonant(w.n(), w.delta())) {
    return resonant_coefficients(w, free_values, pin_by_symmetry);
  }
  return generic_coefficients(w);
}

}  // namespace confquant
