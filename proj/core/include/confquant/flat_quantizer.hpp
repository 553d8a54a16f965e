// Quantization of degree <= 2 polynomial symbols on flat conformally
// structured R^n, built two independent ways:
//
//   quantize_components  assembles (A2, A1, A0) from the component blocks
//                        with the coefficients alpha, beta1..beta4 (b1, b0
//                        in dimension one),
//   quantize_ansatz      applies Id + g1 G0 + g2 D + g3 E.D + g4 L0 + g5 D^2
//                        to the symbol and reads the operator off through
//                        the normal-ordering identification.
//
// Both produce the same operator; the agreement is a library-level test.
// The module also provides the hbar rescaling of symbols, residuals for
// the equivariance property and for the inversion equation that
// characterizes the map, and the formal adjoint with respect to the
// sesquilinear density pairing.

#pragma once

#include <map>
#include <string>

#include "confquant/coefficients.hpp"
#include "confquant/diff_op.hpp"
#include "confquant/weights.hpp"

namespace confquant {

// A polynomial symbol of xi-degree <= 2 together with its density weights.
struct Symbol2 {
  Weights weights;
  Poly P;

  Symbol2(Weights w, Poly p);

  int n() const { return weights.n(); }
  // Dimension agreement and xi-degree <= 2; throws std::invalid_argument.
  void validate() const;
};

// Everything needed to evaluate the quantization map at one set of weights:
// the weights themselves, the hbar used by the rescaled map, and the rule
// for fixing leftover free coefficients when the weights are resonant.
struct QuantizationParams {
  Weights weights;
  Rational hbar = Rational(1);
  // Named values for the free coefficients of a resonant family (for
  // example {"gamma4", 1/48}); ignored off resonance.
  std::map<std::string, Rational> free_values;
  // Resolve leftover freedom by formal self-adjointness (needs
  // lambda + mu = 1).
  bool pin_by_symmetry = false;

  explicit QuantizationParams(Weights w) : weights(std::move(w)) {}

  // The coefficient set these parameters select.  Throws
  // InadmissiblePairError / ResonanceUnresolvedError as appropriate.
  CoefficientSet resolve() const;
};

// The canonical name of the leftover free coefficient at a resonant delta
// ("gamma3" for delta = 1 in dimension >= 2, "gamma4" for the other
// resonances, "alpha"/"b0"/"b1" in dimension one).  Lets callers supply a
// single unlabeled value.  At n = 2, delta = 1 the family has further free
// directions beyond the canonical one; those must be named explicitly.
std::string canonical_free_coefficient(int n, const Rational& delta);

// Component-chart construction: A2 = P2 and
//   A1^i = P1^i + beta1 d_j P2^{ij} + beta2 g^{ij} g_{kl} d_j P2^{kl}
//   A0   = P0 + alpha d_i P1^i + beta3 d_i d_j P2^{ij}
//             + beta4 g^{ij} g_{kl} d_i d_j P2^{kl}
// (in dimension one the trace blocks coincide with the divergence blocks
// and the effective coefficients b1, b0 are used).
DiffOperator2 quantize_components(const QuantizationParams& params,
                                  const Symbol2& s);

// Operator-chart construction: apply the five-operator polynomial ansatz
// to P and identify the result with an operator.  In dimension one the
// five operators are linearly dependent on xi-degree <= 2 input and the
// chart can be singular even where the map is regular; in that case the
// collapsed three-operator form (with alpha, b1, b0) is used instead.
DiffOperator2 quantize_ansatz(const QuantizationParams& params,
                              const Symbol2& s);

// The quantization map (component route; ansatz agreement is tested).
DiffOperator2 quantize(const QuantizationParams& params, const Symbol2& s);

// Component-chart construction from an explicit coefficient set (no
// resolution step).  Used to probe mutated coefficients: perturbing any
// coefficient of the correct set must break equivariance.
DiffOperator2 quantize_with(const CoefficientSet& c, const FlatMetric& m,
                            const Poly& P);

// Multiplies the xi-degree-k homogeneous part by (i hbar)^k.  This is the
// symbol-side twist that turns the quantization map into its hbar version.
Symbol2 apply_hbar(const Symbol2& s, const Rational& hbar);

// quantize after the hbar twist: the map written Q_{lambda,mu;hbar}.
DiffOperator2 quantize_hbar(const QuantizationParams& params,
                            const Symbol2& s);

// A2^{ij} d_i d_j f + A1^i d_i f + A0 f; f must be x-only.
Poly apply_operator(const DiffOperator2& A, const Poly& f);

// Q(L_X P) - L_X(Q(P)) with the symbol action at weight delta on the input
// and the two-weight operator action on the output; identically zero iff
// the map intertwines X on this symbol.
DiffOperator2 equivariance_residual(const QuantizationParams& params,
                                    const VectorFieldGenerator& X,
                                    const Symbol2& s);

// Same residual for an explicit coefficient set.
DiffOperator2 equivariance_residual_with(const CoefficientSet& c,
                                         const Weights& w,
                                         const VectorFieldGenerator& X,
                                         const Poly& P);

// The five-operator ansatz applied to an arbitrary polynomial (all gamma
// coefficients must be present).
Poly ansatz_action(const CoefficientSet& c, const FlatMetric& m,
                   const Poly& P);

// Residual of the single polynomial identity equivalent to equivariance
// under the inversions:
//   [Q, L] (P) - ( -1/2 R T (E - 1) + 2 E + 2 (n lambda - 1) ) E Q(P),
// where [Q, L](P) = sum_r sign(r) xi_r ( Q(L_r P) - L_r(Q P) ) is the
// commutator with the inversion action formed per index and contracted
// afterwards, and E is the xi Euler operator.  Zero for every P iff Q
// solves the coefficient system.
Poly equivariance_equation_residual(const QuantizationParams& params,
                                    const Symbol2& s);

// Same residual for an explicit coefficient set (the gamma chart must be
// populated; set all gammas to zero to probe the identity map).
Poly equivariance_equation_residual_with(const CoefficientSet& c,
                                         const Weights& w, const Poly& P);

// Formal adjoint for the sesquilinear pairing integral(conj(phi) psi):
// each term c(x) d^a goes to (-1)^{|a|} d^a o conj(c(x)), re-expanded into
// (A2, A1, A0) form.
DiffOperator2 formal_adjoint(const DiffOperator2& A);

}  // namespace confquant
