#include "confquant/flat_quantizer.hpp"

#include <stdexcept>
#include <utility>

#include "confquant/errors.hpp"
#include "confquant/invariant_ops.hpp"

namespace confquant {

namespace {

void add_scaled(DiffOperator2& acc, const Rational& c,
                const DiffOperator2& blk) {
  if (c == 0) return;
  acc += ExactScalar(c) * blk;
}

// Resolves the coefficient set and insists it is complete enough to build
// flat operators; otherwise reports which coefficients are still free.
CoefficientSet resolve_for_operators(const QuantizationParams& params) {
  CoefficientSet c = params.resolve();
  if (!c.flat_ready()) {
    std::string msg =
        "quantize: the resonant family still has free coefficients:";
    bool any = false;
    for (const auto& fp : c.free_parameters) {
      if (!fp.value.has_value()) {
        msg += " " + fp.name;
        any = true;
      }
    }
    if (!any) msg += " (coefficient set incomplete)";
    msg += "; supply values or pin by symmetry";
    throw ResonanceUnresolvedError(msg);
  }
  return c;
}

bool has_all_gammas(const CoefficientSet& c) {
  return c.gamma1.has() && c.gamma2.has() && c.gamma3.has() &&
         c.gamma4.has() && c.gamma5.has();
}

}  // namespace

Symbol2::Symbol2(Weights w, Poly p) : weights(std::move(w)), P(std::move(p)) {
  validate();
}

void Symbol2::validate() const {
  if (P.n() != weights.n()) {
    throw std::invalid_argument("Symbol2: polynomial dimension " +
                                std::to_string(P.n()) +
                                " does not match weights dimension " +
                                std::to_string(weights.n()));
  }
  if (P.xi_degree() > 2) {
    throw std::invalid_argument("Symbol2: xi-degree exceeds 2");
  }
}

CoefficientSet QuantizationParams::resolve() const {
  return coefficients_for(weights, free_values, pin_by_symmetry);
}

std::string canonical_free_coefficient(int n, const Rational& delta) {
  if (!is_resonant(n, delta)) {
    throw std::invalid_argument(
        "canonical_free_coefficient: delta is not resonant");
  }
  if (n == 1) {
    if (delta == 1) return "alpha";
    if (delta == make_rational(3, 2)) return "b0";
    return "b1";  // delta == 2
  }
  return delta == 1 ? "gamma3" : "gamma4";
}

DiffOperator2 quantize_with(const CoefficientSet& c, const FlatMetric& m,
                            const Poly& P) {
  if (P.n() != m.n() || P.xi_degree() > 2) {
    throw std::invalid_argument("quantize_with: need a xi-degree <= 2 "
                                "polynomial in the metric's dimension");
  }
  if (!c.flat_ready()) {
    throw std::invalid_argument("quantize_with: incomplete coefficient set");
  }
  const SymbolComponents comps = split_symbol(P);

  DiffOperator2 A = block_identity(comps);
  add_scaled(A, c.alpha.get(), block_alpha(comps));
  if (m.n() == 1) {
    // The divergence and trace blocks coincide in dimension one; only the
    // combined coefficients b1 = beta1 + beta2 and b0 = beta3 + beta4 are
    // defined there.
    add_scaled(A, c.one_dim_first.get(), block_beta1(comps));
    add_scaled(A, c.one_dim_zero.get(), block_beta3(comps));
  } else {
    add_scaled(A, c.beta1.get(), block_beta1(comps));
    add_scaled(A, c.beta2.get(), block_beta2(m, comps));
    add_scaled(A, c.beta3.get(), block_beta3(comps));
    add_scaled(A, c.beta4.get(), block_beta4(m, comps));
  }
  return A;
}

DiffOperator2 quantize_components(const QuantizationParams& params,
                                  const Symbol2& s) {
  s.validate();
  if (s.n() != params.weights.n()) {
    throw std::invalid_argument("quantize_components: dimension mismatch");
  }
  const CoefficientSet c = resolve_for_operators(params);
  return quantize_with(c, params.weights.metric, s.P);
}

Poly ansatz_action(const CoefficientSet& c, const FlatMetric& m,
                   const Poly& P) {
  if (!has_all_gammas(c)) {
    throw std::invalid_argument(
        "ansatz_action: the five-coefficient operator chart is unavailable "
        "for this coefficient set");
  }
  Poly out = P;
  const Poly dP = op_D(P);
  if (c.gamma1.get() != 0) out += ExactScalar(c.gamma1.get()) * op_G0(m, P);
  if (c.gamma2.get() != 0) out += ExactScalar(c.gamma2.get()) * dP;
  if (c.gamma3.get() != 0) out += ExactScalar(c.gamma3.get()) * op_euler(dP);
  if (c.gamma4.get() != 0) out += ExactScalar(c.gamma4.get()) * op_L0(m, P);
  if (c.gamma5.get() != 0) out += ExactScalar(c.gamma5.get()) * op_D(dP);
  return out;
}

DiffOperator2 quantize_ansatz(const QuantizationParams& params,
                              const Symbol2& s) {
  s.validate();
  if (s.n() != params.weights.n()) {
    throw std::invalid_argument("quantize_ansatz: dimension mismatch");
  }
  const CoefficientSet c = resolve_for_operators(params);
  const FlatMetric& m = params.weights.metric;

  Poly img(s.n());
  if (has_all_gammas(c)) {
    img = ansatz_action(c, m, s.P);
  } else {
    // Dimension one with a singular five-coefficient chart: the operators
    // G0, D, E.D collapse on the xi-degree-2 part and L0 collapses onto
    // D^2, so the chart reduces to three effective coefficients.
    const Poly p2 = s.P.xi_homogeneous_part(2);
    const Poly p1 = s.P.xi_homogeneous_part(1);
    const Rational half_b1 = Rational(c.one_dim_first.get() / 2);
    const Rational half_b0 = Rational(c.one_dim_zero.get() / 2);
    img = s.P;
    img += ExactScalar(c.alpha.get()) * op_D(p1);
    img += ExactScalar(half_b1) * op_D(p2);
    img += ExactScalar(half_b0) * op_D(op_D(p2));
  }
  return symbol_to_operator(img);
}

DiffOperator2 quantize(const QuantizationParams& params, const Symbol2& s) {
  return quantize_components(params, s);
}

Symbol2 apply_hbar(const Symbol2& s, const Rational& hbar) {
  Poly out(s.P.n());
  Rational hk(1);
  for (int k = 0; k <= 2; ++k) {
    const Poly part = s.P.xi_homogeneous_part(k);
    if (!part.is_zero()) {
      out += (ExactScalar::i_pow(k) * ExactScalar(hk)) * part;
    }
    hk = Rational(hk * hbar);
  }
  return Symbol2(s.weights, out);
}

DiffOperator2 quantize_hbar(const QuantizationParams& params,
                            const Symbol2& s) {
  return quantize(params, apply_hbar(s, params.hbar));
}

Poly apply_operator(const DiffOperator2& A, const Poly& f) {
  if (!f.is_x_only()) {
    throw std::invalid_argument(
        "apply_operator: densities must not depend on xi");
  }
  return A.apply(f);
}

DiffOperator2 equivariance_residual_with(const CoefficientSet& c,
                                         const Weights& w,
                                         const VectorFieldGenerator& X,
                                         const Poly& P) {
  const FlatMetric& m = w.metric;
  const DiffOperator2 q_of_moved =
      quantize_with(c, m, lie_symbol(m, X, w.delta(), P));
  const DiffOperator2 moved_q =
      lie_operator_defn(m, X, w.lambda, w.mu, quantize_with(c, m, P));
  return q_of_moved - moved_q;
}

DiffOperator2 equivariance_residual(const QuantizationParams& params,
                                    const VectorFieldGenerator& X,
                                    const Symbol2& s) {
  s.validate();
  const CoefficientSet c = resolve_for_operators(params);
  return equivariance_residual_with(c, params.weights, X, s.P);
}

Poly equivariance_equation_residual_with(const CoefficientSet& c,
                                         const Weights& w, const Poly& P) {
  const FlatMetric& m = w.metric;
  if (!has_all_gammas(c)) {
    throw std::invalid_argument(
        "equivariance_equation_residual: the operator chart is required");
  }

  const Rational delta = w.delta();
  const Poly qp = ansatz_action(c, m, P);
  // The commutator is formed per inversion index and contracted with
  // xi^r = sign(r) xi_r afterwards: the map Q does not commute with
  // multiplication by xi, so the contraction must stay outside it.
  const int n = m.n();
  Poly lhs(n);
  for (int r = 0; r < n; ++r) {
    VectorFieldGenerator X;
    X.kind = VectorFieldGenerator::Kind::Inversion;
    X.i = r;
    const Poly per_index = ansatz_action(c, m, lie_symbol(m, X, delta, P)) -
                           lie_symbol(m, X, delta, qp);
    if (per_index.is_zero()) continue;
    lhs += ExactScalar(Rational(m.sign(r))) * (Poly::var_xi(n, r) * per_index);
  }

  const Poly eq = op_euler(qp);
  const Poly em1 = op_euler(eq) - eq;  // (E - 1) E Q(P)
  const Rational scalar = Rational(2 * (Rational(w.n()) * w.lambda - 1));
  Poly rhs = ExactScalar(make_rational(-1, 2)) * op_R(m, op_T(m, em1));
  rhs += ExactScalar(Rational(2)) * op_euler(eq);
  rhs += ExactScalar(scalar) * eq;

  return lhs - rhs;
}

Poly equivariance_equation_residual(const QuantizationParams& params,
                                    const Symbol2& s) {
  s.validate();
  const CoefficientSet c = resolve_for_operators(params);
  return equivariance_equation_residual_with(c, params.weights, s.P);
}

DiffOperator2 formal_adjoint(const DiffOperator2& A) {
  A.validate();
  const DensityOp op = to_density_op(A);
  DensityOp adj(A.n);
  for (const auto& [a, coeff] : op.terms()) {
    int order = 0;
    for (int e : a) order += e;
    DensityOp derivative(A.n);
    derivative.add_term(a, Poly::constant(A.n, ExactScalar(Rational(1))));
    DensityOp term =
        derivative.compose(DensityOp::multiplication(coeff.conj()));
    if (order % 2 == 1) term = -term;
    adj += term;
  }
  return to_diff_operator2(adj);
}

}  // namespace confquant
