// Quantization on curved pseudo-Riemannian backgrounds, evaluated at a
// point from exact 2-jets.  The input is a symbol jet (coefficients of a
// fiberwise polynomial of degree <= 2 with their derivatives); the output
// is the differential operator at the point, acting on local
// representatives of lambda-densities:
//
//   A = A2^{ij} d_i d_j + A1^i d_i + A0.
//
// Densities differentiate covariantly via nabla_i f = d_i f - lambda
// Gamma_i f with Gamma_i the contracted Christoffel symbol, and weight-
// delta symbols via the corresponding tensor-density rule.  The map is
//
//   second order:  P^{ij} nabla_i nabla_j
//                  + (beta1 nabla_i P^{ij}
//                     + beta2 g^{ij} g_{kl} nabla_i P^{kl}) nabla_j
//                  + beta3 nabla_i nabla_j (P^{ij})
//                  + beta4 g^{ij} g_{kl} nabla_i nabla_j (P^{kl})
//                  + curvature terms (below)
//   first order:   P1^i nabla_i + alpha nabla_i(P1^i)
//   zero order:    P0
//
// with the flat-layer coefficients.  The curvature terms depend on the
// dimension:
//
//   n >= 3:  beta5 Ric_ij P^{ij} + beta6 R g_ij P^{ij}
//   n  = 2:  (4 lambda (mu-1)/(2 delta - 3)) (S_ij P^{ij}
//             + R g_ij P^{ij} / (8 (delta - 1)))
//   n  = 1:  c1 * S * P   with   c1 = lambda - (2 - delta) b0,
//
// where S is the Schwarzian of a conformally flat presentation g = F g0
// (required for n <= 2).  The n = 1 rule reproduces the closed form
// -2 lambda (mu - 1)/(3 - 2 delta) off resonance and extends it to the
// resolved resonant families; it is exactly the value that makes the
// one-dimensional map independent of the metric (all metrics on a line
// are conformally equivalent), which the tests verify directly.  At
// resonant weights with lambda (mu - 1) = 0 every curvature coefficient
// vanishes.
//
// Everything here is the classical map; Planck-constant twists enter only
// through quantize_*_hbar / the geodesic and coupling operators, which
// scale a degree-k homogeneous block by (i hbar)^k.

#pragma once

#include <optional>
#include <vector>

#include "confquant/coefficients.hpp"
#include "confquant/flat_quantizer.hpp"
#include "confquant/geometry.hpp"
#include "confquant/rational.hpp"
#include "confquant/weights.hpp"

namespace confquant {

// 1-jets of the coefficients of a degree <= 2 fiberwise polynomial
// P2^{ij} xi_i xi_j + P1^i xi_i + P0 at a point, with second derivatives
// for the quadratic part (the double divergence needs them).
// dP2[k][i][j] = d_k P2^{ij}, ddP2[k][l][i][j] = d_k d_l P2^{ij},
// dP1[k][i] = d_k P1^i.
struct SymbolJet2 {
  int n = 0;
  RMat P2;
  RTen3 dP2;
  RTen4 ddP2;
  RVec P1;
  RMat dP1;
  Rational P0;

  SymbolJet2(int n_, RMat P2_, RTen3 dP2_, RTen4 ddP2_, RVec P1_, RMat dP1_,
             Rational P0_);

  static SymbolJet2 zero(int n);
};

// 1-jet of a U(1) connection A = A_i dx^i: values and dA[i][j] = d_i A_j.
struct ConnectionJet {
  int n = 0;
  RVec A;
  RMat dA;

  ConnectionJet(int n_, RVec A_, RMat dA_);
};

// A differential operator of order <= 2 frozen at a point, together with
// the density weights it maps between.
struct PointOperator {
  int n = 0;
  std::vector<std::vector<ExactScalar>> A2;
  std::vector<ExactScalar> A1;
  ExactScalar A0;
  Rational lambda, mu;

  static PointOperator zero(int n, const Rational& lambda, const Rational& mu);
};

bool operator==(const PointOperator& a, const PointOperator& b);

// max over all coefficients of max(|re|, |im|) of the entry differences;
// weights must agree.
Rational point_operator_distance(const PointOperator& a,
                                 const PointOperator& b);

// A conformally flat presentation: the metric F * g0 with g0 the constant
// diagonal +-1 metric of the given signature.
struct Presentation {
  ConformalFactorJet factor;
  FlatMetric base;

  MetricJet2 metric_jets() const { return conformally_flat_jets(factor, base); }
};

// First-order map P1^i nabla_i + alpha nabla_i(P1^i) + P0 (the quadratic
// part of s must vanish).  Resonant weights must resolve alpha.
PointOperator quantize_first_order(const QuantizationParams& params,
                                   const MetricJet2& m, const SymbolJet2& s);

// Full map on degree <= 2 symbol jets.  For n <= 2 a presentation is
// required and must present exactly the jets m
// (PresentationRequiredError otherwise).  Resonant weights must be
// admissible and fully resolved.
PointOperator quantize_second_order(
    const QuantizationParams& params, const MetricJet2& m, const SymbolJet2& s,
    const std::optional<Presentation>& presentation = std::nullopt);

// Same, with an explicit coefficient set (no weights-to-coefficients
// resolution); used by mutation probes.  Curvature coefficients are taken
// from cs.beta5/beta6 for n >= 3.
PointOperator point_operator_with(
    const CoefficientSet& cs, const MetricJet2& m, const SymbolJet2& s,
    const std::optional<Presentation>& presentation = std::nullopt);

// Planck-twisted map: each degree-k homogeneous block of s is scaled by
// (i hbar)^k before quantization.
PointOperator quantize_second_order_hbar(
    const QuantizationParams& params, const MetricJet2& m, const SymbolJet2& s,
    const Rational& hbar,
    const std::optional<Presentation>& presentation = std::nullopt);

// Coefficient-wise difference between quantizing with the metric jets m
// and with the rescaled jets F * m, the symbol jets held fixed.  Exactly
// zero is the conformal-invariance statement.  For n <= 2 the presentation
// of m must be supplied; the rescaled route then uses the presentation
// (F * factor, g0).
Rational conformal_invariance_residual(
    const QuantizationParams& params, const MetricJet2& m,
    const ConformalFactorJet& f, const SymbolJet2& s,
    const std::optional<Presentation>& presentation = std::nullopt);

// The canonical coordinate representative of the quadratic Hamiltonian
// g^{ij} xi_i xi_j as a weight-delta symbol: P2 = g^{ij} |det g|^{delta/2}
// (with that normalization all its covariant derivatives vanish).  Only
// even integer delta is representable in rational jets; other shifts are
// rejected.  Used by the generic-route tests of the closed-form operators.
SymbolJet2 hamiltonian_jets(const MetricJet2& m, const Rational& delta);

// |det g|^{k}-jets for integer k (helper for the twist factor between the
// canonical representative above and the closed-form operators).
ConformalFactorJet det_power_jets(const MetricJet2& m, long k);

// -hbar^2 (Laplacian + C R) on lambda-densities, with
// C = n^2 lambda (mu-1) / ((n-1)(n+2-2n delta)) (0 at resonant weights
// with vanishing numerator).  n >= 2.  Resonant weights must be
// admissible; the scalar coefficient then matches the named resonant
// operators.
PointOperator quantize_geodesic(const QuantizationParams& params,
                                const MetricJet2& m, const Rational& hbar);

// -hbar^2 g^{jk}(nabla_j + (i/hbar)A_j)(nabla_k + (i/hbar)A_k)
// - hbar^2 C R + i hbar (1-lambda-mu)/(1-delta) g^{jk} nabla_j A_k.
// Requires hbar != 0 and n >= 2.
PointOperator quantize_minimal_coupling(const QuantizationParams& params,
                                        const MetricJet2& m,
                                        const ConnectionJet& a,
                                        const Rational& hbar);

// The distinguished operators at resonant weights: -hbar^2 (Laplacian
// + c R) with
//   yamabe          (lambda, mu) = ((n-2)/2n, (n+2)/2n),  c = -(n-2)/(4(n-1))
//   laplace         (0, 1),                               c = 0
//   new_laplacian   (-1/n, (n+1)/n),                      c = 1/((n-1)(n+2))
// and for n = 1 the Sturm-Liouville operator at (-1/2, 3/2),
// -hbar^2 (Laplacian - S/(2 g)) with S the presentation Schwarzian.
enum class ResonantLaplacian { kYamabe, kLaplace, kNewLaplacian,
                               kSturmLiouville };

// The (lambda, mu) pair of the named operator in dimension n.
std::pair<Rational, Rational> resonant_laplacian_weights(ResonantLaplacian op,
                                                         int n);

// The scalar-curvature coefficient c of the named operator.
Rational resonant_scalar_coefficient(ResonantLaplacian op, int n);

// n >= 2 cases take metric jets; the Sturm-Liouville case requires n = 1
// and a presentation.
PointOperator resonant_laplacian(
    ResonantLaplacian op, const MetricJet2& m, const Rational& hbar,
    const std::optional<Presentation>& presentation = std::nullopt);

}  // namespace confquant
