// The conformal Lie algebra acting on densities and symbols over flat
// pseudo-Euclidean space, together with the algebra of invariant operators
// on symbols built from the metric:
//
//   R  : multiplication by the quadratic form sum_i sign(i) xi_i^2
//   E  : shifted Euler operator  xi_i d/dxi_i + n/2
//   Euler : unshifted Euler operator  xi_i d/dxi_i
//   T  : metric trace  sum_i sign(i) d^2/dxi_i^2
//   G  : gradient-type  sum_i sign(i) xi_i d/dx^i
//   D  : divergence-type  sum_i d/dxi_i d/dx^i
//   L  : Laplacian  sum_i sign(i) d^2/d(x^i)^2
//   R0 = R T,  G0 = G T,  L0 = L T
//   Casimir = E^2 - (RT + TR)/2
//   Z  : the degree-preserving cubic combination
//        (Casimir + 3/2) L + ((D[G,C] + [G,C]D - G[D,C] - [D,C]G))/4
//
// The conformal algebra is generated by translations, rotations, the
// dilation and the inversion-type fields; generators carry stable string
// ids ("translation:1", "rotation:1:2", "dilation", "inversion:1", indices
// 1-based) used by the CLI and in test reports.

#pragma once

#include <string>
#include <vector>

#include "confquant/metric.hpp"
#include "confquant/poly.hpp"

namespace confquant {

struct VectorFieldGenerator {
  enum class Kind { Translation, Rotation, Dilation, Inversion };

  Kind kind = Kind::Translation;
  int i = 0;  // 0-based index for translation/inversion, first rotation index
  int j = 0;  // second rotation index (i < j)
};

// All generators of the conformal algebra for dimension n:
// n translations, n(n-1)/2 rotations, the dilation, n inversion fields.
std::vector<VectorFieldGenerator> conformal_generators(int n);
// The isometry subalgebra only (translations and rotations).
std::vector<VectorFieldGenerator> euclidean_generators(int n);

std::string generator_id(const VectorFieldGenerator& X);
VectorFieldGenerator parse_generator(const std::string& id, int n);

// Component functions X^k(x) of the field, as x-only polynomials.
std::vector<Poly> generator_components(const FlatMetric& m,
                                       const VectorFieldGenerator& X);
// Div X = d_k X^k, computed from the components.
Poly generator_divergence(const FlatMetric& m, const VectorFieldGenerator& X);

// Divergence sum_k d_k X^k of an arbitrary polynomial vector field given by
// its x-only components X^1..X^n.
Poly field_divergence(const std::vector<Poly>& X);

// Lie derivative of a weight-lambda density f(x):
//   X^k d_k f + lambda (Div X) f.
// f must not depend on xi.
Poly lie_density(const FlatMetric& m, const VectorFieldGenerator& X,
                 const Rational& lambda, const Poly& f);
Poly lie_density(const std::vector<Poly>& X, const Rational& lambda,
                 const Poly& f);

// Lie derivative of a weight-delta symbol P(x, xi):
//   X^k d_{x^k} P - (d_{x^k} X^j) xi_j d_{xi_k} P + delta (Div X) P.
Poly lie_symbol(const FlatMetric& m, const VectorFieldGenerator& X,
                const Rational& delta, const Poly& P);
Poly lie_symbol(const std::vector<Poly>& X, const Rational& delta,
                const Poly& P);

// Invariant operators on symbols.
enum class InvariantOp { R, E, Euler, T, G, D, L, R0, G0, L0, Casimir, Z };

std::string invariant_op_name(InvariantOp op);
InvariantOp parse_invariant_op(const std::string& name);

Poly apply_invariant(InvariantOp op, const FlatMetric& m, const Poly& P);

// Direct entry points (same semantics as apply_invariant).
Poly op_R(const FlatMetric& m, const Poly& P);
Poly op_E(const FlatMetric& m, const Poly& P);
Poly op_euler(const Poly& P);
Poly op_T(const FlatMetric& m, const Poly& P);
Poly op_G(const FlatMetric& m, const Poly& P);
Poly op_D(const Poly& P);
Poly op_L(const FlatMetric& m, const Poly& P);
Poly op_R0(const FlatMetric& m, const Poly& P);
Poly op_G0(const FlatMetric& m, const Poly& P);
Poly op_L0(const FlatMetric& m, const Poly& P);
Poly op_casimir(const FlatMetric& m, const Poly& P);
Poly op_Z(const FlatMetric& m, const Poly& P);

// The contracted inversion action on symbols at weight delta,
//   L(P) = sum_r sign(r) xi_r L_{inversion r}(P),
// the degree-raising operator the commutators below are taken against.
Poly contracted_inversion_action(const FlatMetric& m, const Rational& delta,
                                 const Poly& P);

// The six commutators of invariant operators with the contracted inversion
// action, as residuals LHS - RHS of
//   [R0, L] = 0
//   [Euler, L] = 0
//   [G0, L] = 2 R0 (Euler - n delta)
//   [D,  L] = -2 R0 + 4 Euler^2 - 2(n(delta-1)+2) Euler
//   [L0, L] = -4 R0 D + 8 Euler G0 + 2(n(1-2 delta)-2) G0
//   [D^2,L] = -4 R0 D - 2 G0 + 8 Euler^2 D + 4(n(1-delta)-1) Euler D
// keyed by the stable ids "R0_inv", "E_inv", "G0_inv", "D_inv", "L0_inv",
// "D2_inv" (in that order).  Every residual is identically zero.
std::vector<std::string> commutation_relation_ids();
Poly commutation_residual(const std::string& relation_id, const FlatMetric& m,
                          const Rational& delta, const Poly& P);

}  // namespace confquant
