// Exact pseudo-Riemannian geometry at a single point, computed from 2-jets
// of the metric: Christoffel symbols and their first derivatives, Ricci and
// scalar curvature, conformal rescaling laws, and Schwarzian derivatives.
//
// Everything is a finite list of rationals evaluated at one point.  A
// "2-jet" of the metric is (g, dg, ddg) there; that is exactly the data
// curvature needs.  Curvature conventions:
//
//   Gamma^k_ij = (1/2) g^{kl} (d_i g_lj + d_j g_li - d_l g_ij)
//   Ric_ij    = d_k Gamma^k_ij - d_i Gamma^k_kj
//               + Gamma^k_km Gamma^m_ij - Gamma^k_im Gamma^m_kj
//   R         = g^{ij} Ric_ij
//
// so the round 2-sphere of radius r has R = 2/r^2 > 0 (fixed against a
// floating-point finite-difference oracle in the tests).
//
// A conformally flat presentation is a pair (F, g0) with g0 a constant
// diagonal +-1 metric and F > 0; it presents the metric g = F * g0.  The
// low-dimensional quantizers require their metrics in this form.  The
// Schwarzian tensor of such a presentation is
//
//   S_ij = F_ij/(2F) - (3/(4F^2)) F_i F_j + (1/(8F^2)) ||dF||^2_g g_ij
//
// with F_ij the plain second partials and ||dF||^2_g = g^{kl} F_k F_l taken
// in the presented metric g = F g0.  With these conventions the trace
// identity R = -2 g^{ij} S_ij holds identically in dimension two, and for
// n = 1 with F = (phi')^2 the single component reduces to the classical
// Schwarzian derivative phi'''/phi' - (3/2)(phi''/phi')^2.  (Using the
// curved Hessian of F instead breaks both reductions; the flat-partials
// form is the one consistent with the rest of the library.)

#pragma once

#include <vector>

#include "confquant/metric.hpp"
#include "confquant/rational.hpp"

namespace confquant {

using RVec = std::vector<Rational>;
using RMat = std::vector<std::vector<Rational>>;   // [i][j]
using RTen3 = std::vector<RMat>;                   // [k][i][j]
using RTen4 = std::vector<RTen3>;                  // [k][l][i][j]

RVec rvec_zero(int n);
RMat rmat_zero(int n);
RTen3 rten3_zero(int n);
RTen4 rten4_zero(int n);

// 2-jet of a metric at a point: values g_ij, first derivatives
// dg[k][i][j] = d_k g_ij and second derivatives ddg[k][l][i][j]
// = d_k d_l g_ij.  The constructor validates shapes, the symmetries
// (i,j) and (k,l), and that g is invertible.
struct MetricJet2 {
  int n = 0;
  RMat g;
  RTen3 dg;
  RTen4 ddg;

  MetricJet2(int n_, RMat g_, RTen3 dg_, RTen4 ddg_);

  // Constant metric: all derivatives vanish.
  static MetricJet2 constant(const RMat& g0);
  // The diagonal +-1 metric of the given signature, constant.
  static MetricJet2 flat(const FlatMetric& m);

  RMat g_inverse() const;  // throws std::domain_error when singular
};

// 2-jet of a positive conformal factor: F, F_i, F_ij.
struct ConformalFactorJet {
  int n = 0;
  Rational F;
  RVec dF;
  RMat ddF;

  ConformalFactorJet(int n_, Rational F_, RVec dF_, RMat ddF_);

  static ConformalFactorJet constant(int n, const Rational& value);
};

// Levi-Civita data derived from a metric 2-jet: Christoffel symbols
// Gamma[k][i][j] = Gamma^k_ij, their derivatives dGamma[l][k][i][j]
// = d_l Gamma^k_ij, the contracted symbol Gamma_i = Gamma^j_ji and its
// derivative, Ricci tensor and scalar curvature.  g_inv is kept for
// downstream index raising.
struct CurvatureData {
  int n = 0;
  RMat g_inv;
  RTen3 Gamma;
  RTen4 dGamma;
  RVec Gamma_tr;    // Gamma_i = Gamma^j_ji
  RMat dGamma_tr;   // [i][j] = d_i Gamma_j
  RMat Ric;
  Rational R;
};

CurvatureData curvature_from_jets(const MetricJet2& m);

// Product-rule 2-jet of the rescaled metric F * g.
MetricJet2 conformal_rescale(const MetricJet2& m, const ConformalFactorJet& f);

// Closed-form transformation laws under g -> F g, stated directly in terms
// of the base curvature data.  These are the second route against which
// curvature_from_jets(conformal_rescale(m, f)) is checked.
//
//   Gamma^k_ij -> Gamma^k_ij + (1/2F)(F_i delta^k_j + F_j delta^k_i
//                                      - F^k g_ij),      F^k = g^{jk} F_j
//   Ric        -> Ric - ((n-2)/2)(HessF/F - (3/2) dF dF / F^2)
//                     - (1/2)(Lap F / F + ((n-4)/2) ||dF||^2 / F^2) g
//   R          -> R/F - (n-1)(Lap F / F^2 + ((n-6)/4) ||dF||^2 / F^3)
//
// (The sign on the (n-4)/2 term is the one whose trace reproduces the R
// law; it is fixed here by the two-route agreement tests.)
//
// where HessF_ij = F_ij - Gamma^k_ij F_k, Lap F = g^{ij} HessF_ij and
// ||dF||^2 = g^{ij} F_i F_j are all taken with the base metric's data.
RTen3 christoffel_rescaled(const MetricJet2& m, const CurvatureData& c,
                           const ConformalFactorJet& f);
RMat ricci_rescaled(const MetricJet2& m, const CurvatureData& c,
                    const ConformalFactorJet& f);
Rational scalar_curvature_rescaled(const MetricJet2& m, const CurvatureData& c,
                                   const ConformalFactorJet& f);

// 2-jet of the product of two conformal factors (for composing rescalings).
ConformalFactorJet factor_product(const ConformalFactorJet& a,
                                  const ConformalFactorJet& b);

// The metric 2-jet presented by (F, g0): g = F * g0 with g0 constant.
MetricJet2 conformally_flat_jets(const ConformalFactorJet& f,
                                 const FlatMetric& g0);

// True when m carries exactly the jets of F * g0 for some constant
// diagonal +-1 metric g0 (recovered from g / F at the point).
bool matches_presentation(const MetricJet2& m, const ConformalFactorJet& f);

// 3-jet of a diffeomorphism of the line at a point (only the derivatives
// enter the Schwarzian); phi' must be nonzero.
struct DiffeoJet1D {
  Rational d1, d2, d3;

  DiffeoJet1D(Rational d1_, Rational d2_, Rational d3_);
};

// phi'''/phi' - (3/2)(phi''/phi')^2.
Rational schwarzian_1d(const DiffeoJet1D& j);

// Symmetric Schwarzian tensor of a conformally flat presentation; for
// n = 1 the single entry S[0][0] is the scalar (equal to the classical
// Schwarzian of any phi with F = (phi')^2 when the presentation arises
// that way).
struct SchwarzianTensor {
  int n = 0;
  RMat S;

  Rational scalar() const;  // n == 1 accessor
};

// Throws PresentationRequiredError when m is not the 2-jet of F * g0 for a
// constant flat g0.
SchwarzianTensor schwarzian_nd(const ConformalFactorJet& f,
                               const MetricJet2& m);

}  // namespace confquant
