#include "confquant/curved_quantizer.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "confquant/errors.hpp"

namespace confquant {

namespace {

void check_symmetric(const RMat& a, int n, const char* what) {
  if (static_cast<int>(a.size()) != n) {
    throw std::invalid_argument(std::string(what) + ": wrong size");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) {
      throw std::invalid_argument(std::string(what) + ": wrong size");
    }
    for (int j = 0; j < i; ++j) {
      if (a[i][j] != a[j][i]) {
        throw std::invalid_argument(std::string(what) + ": not symmetric");
      }
    }
  }
}

Rational abs_rational(const Rational& r) {
  return r < 0 ? Rational(-r) : r;
}

Rational scalar_norm(const ExactScalar& s) {
  const Rational a = abs_rational(s.re());
  const Rational b = abs_rational(s.im());
  return a < b ? b : a;
}

// nabla P for the quadratic block as a weight-delta (2,0) tensor density:
// first covariant derivatives, divergence, trace gradient, and the two
// contracted second derivatives.
struct QuadCov {
  RTen3 T;       // T[i][k][l] = nabla_i P^{kl}
  RVec V;        // V[j] = nabla_i P^{ij}
  RVec Wtr;      // Wtr[i] = g_{kl} nabla_i P^{kl}
  Rational DD;   // nabla_j nabla_i P^{ij}
  Rational DD4;  // g^{ij} g_{kl} nabla_i nabla_j P^{kl}
};

QuadCov quad_cov(const MetricJet2& m, const CurvatureData& c,
                 const SymbolJet2& s, const Rational& delta) {
  const int n = m.n;
  QuadCov q;
  q.T = rten3_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        Rational t = s.dP2[i][k][l];
        for (int a = 0; a < n; ++a) {
          t += c.Gamma[k][i][a] * s.P2[a][l] + c.Gamma[l][i][a] * s.P2[k][a];
        }
        t -= delta * c.Gamma_tr[i] * s.P2[k][l];
        q.T[i][k][l] = t;
      }
    }
  }

  // dT[j][i][k][l] = d_j (nabla_i P^{kl}) from the symbol 2-jet and the
  // Christoffel 1-jet.
  RTen4 dT = rten4_zero(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Rational t = s.ddP2[j][i][k][l];
          for (int a = 0; a < n; ++a) {
            t += c.dGamma[j][k][i][a] * s.P2[a][l] +
                 c.Gamma[k][i][a] * s.dP2[j][a][l] +
                 c.dGamma[j][l][i][a] * s.P2[k][a] +
                 c.Gamma[l][i][a] * s.dP2[j][k][a];
          }
          t -= delta * (c.dGamma_tr[j][i] * s.P2[k][l] +
                        c.Gamma_tr[i] * s.dP2[j][k][l]);
          dT[j][i][k][l] = t;
        }
      }
    }
  }

  q.V = rvec_zero(n);
  q.Wtr = rvec_zero(n);
  for (int j = 0; j < n; ++j) {
    Rational v(0), w(0);
    for (int i = 0; i < n; ++i) v += q.T[i][i][j];
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) w += m.g[k][l] * q.T[j][k][l];
    }
    q.V[j] = v;
    q.Wtr[j] = w;
  }

  // Double divergence: nabla_j V^j with V a weight-delta vector density.
  Rational dd(0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) dd += dT[j][i][i][j];
    dd += (Rational(1) - delta) * c.Gamma_tr[j] * q.V[j];
  }
  q.DD = dd;

  // Trace of the full second covariant derivative:
  // nabla_j T_i^{kl} contracted with g^{ij} g_{kl}.
  Rational dd4(0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Rational t = dT[j][i][k][l];
          for (int a = 0; a < n; ++a) {
            t -= c.Gamma[a][j][i] * q.T[a][k][l];
            t += c.Gamma[k][j][a] * q.T[i][a][l] +
                 c.Gamma[l][j][a] * q.T[i][k][a];
          }
          t -= delta * c.Gamma_tr[j] * q.T[i][k][l];
          dd4 += c.g_inv[i][j] * m.g[k][l] * t;
        }
      }
    }
  }
  q.DD4 = dd4;
  return q;
}

Rational coefficient_or_throw(const MaybeRational& c, const char* name) {
  if (!c.has()) {
    std::string msg = std::string("quantize: coefficient ") + name +
                      " is unavailable";
    if (!c.reason.empty()) msg += " (" + c.reason + ")";
    throw ResonanceUnresolvedError(msg);
  }
  return c.get();
}

CoefficientSet resolve_full(const QuantizationParams& params) {
  CoefficientSet cs = params.resolve();
  if (!cs.flat_ready()) {
    std::string msg =
        "quantize: the resonant family still has free coefficients:";
    bool any = false;
    for (const auto& fp : cs.free_parameters) {
      if (!fp.value.has_value()) {
        msg += " " + fp.name;
        any = true;
      }
    }
    if (!any) msg += " (coefficient set incomplete)";
    msg += "; supply values or pin by symmetry";
    throw ResonanceUnresolvedError(msg);
  }
  return cs;
}

// The scalar-curvature coefficient of the geodesic operator,
// C = n^2 lambda (mu-1) / ((n-1)(n+2-2n delta)), with the resonant
// limit 0 when the numerator vanishes.
Rational geodesic_coefficient(int n, const Rational& lambda,
                              const Rational& mu) {
  const Rational num = lambda * (mu - 1);
  if (num == 0) return Rational(0);
  const Rational delta = mu - lambda;
  const Rational den = Rational(n - 1) * (Rational(n + 2) - 2 * n * delta);
  if (den == 0) {
    throw std::logic_error(
        "geodesic coefficient: singular at admissible weights");
  }
  return Rational(n * n) * num / den;
}

// Admissibility gate shared by the closed-form operators: resonant weights
// must sit on the solvable locus, but leftover free coefficients are fine
// because the closed forms do not involve them.
void require_admissible(const QuantizationParams& params) {
  const Weights& w = params.weights;
  if (is_resonant(w.n(), w.delta())) {
    resonant_coefficients(w, params.free_values, params.pin_by_symmetry);
  }
}

void check_dims(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

// Metric jets produced by a presentation must agree exactly with the jets
// being quantized; anything else means the caller presented a different
// metric.
void require_presented(const MetricJet2& m, const Presentation& p,
                       const char* what) {
  check_dims(m.n, p.base.n(), what);
  const MetricJet2 built = p.metric_jets();
  bool same = built.g == m.g && built.dg == m.dg && built.ddg == m.ddg;
  if (!same) {
    throw PresentationRequiredError(
        std::string(what) +
        ": the supplied presentation does not present these metric jets");
  }
}

struct CurvatureCoefficients {
  // n >= 3: coefficient of Ric_ij P^{ij} and of R g_ij P^{ij}.
  // n  = 2: coefficient of S_ij P^{ij} and of R g_ij P^{ij}.
  // n  = 1: coefficient of S * P (second slot unused).
  Rational first, second;
};

// Every admissible resonant pair either has lambda (mu-1) = 0, in which
// case all curvature terms vanish, or keeps every curvature denominator
// nonzero, in which case the closed forms apply verbatim.
CurvatureCoefficients curvature_coefficients(const CoefficientSet& cs) {
  CurvatureCoefficients out{Rational(0), Rational(0)};
  const Rational num = cs.lambda * (cs.mu - 1);
  if (num == 0) return out;
  if (cs.n >= 3) {
    out.first = coefficient_or_throw(cs.beta5, "beta5");
    out.second = coefficient_or_throw(cs.beta6, "beta6");
    return out;
  }
  if (cs.n == 2) {
    const Rational d1 = 2 * cs.delta - 3;
    const Rational d2 = cs.delta - 1;
    if (d1 == 0 || d2 == 0) {
      throw std::logic_error(
          "curvature coefficients: singular at admissible weights");
    }
    out.first = 4 * num / d1;
    out.second = out.first / (8 * d2);
    return out;
  }
  // n = 1 is handled by the one-dimensional rule (tied to b0) in the
  // assembler; nothing to do here.
  return out;
}

PointOperator assemble(const CoefficientSet& cs, const MetricJet2& m,
                       const SymbolJet2& s,
                       const std::optional<Presentation>& presentation) {
  const int n = m.n;
  check_dims(n, s.n, "quantize");
  check_dims(n, cs.n, "quantize");
  if (n <= 2) {
    if (!presentation.has_value()) {
      throw PresentationRequiredError(
          "quantize: dimensions one and two need a conformally flat "
          "presentation (metric = F * flat) to evaluate the curvature "
          "terms");
    }
    require_presented(m, *presentation, "quantize");
  }

  const Rational lambda = cs.lambda;
  const Rational delta = cs.delta;
  const CurvatureData c = curvature_from_jets(m);
  const QuadCov q = quad_cov(m, c, s, delta);

  PointOperator op = PointOperator::zero(n, cs.lambda, cs.mu);

  // P^{ij} nabla_i nabla_j on lambda-densities.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) op.A2[i][j] = ExactScalar(s.P2[i][j]);
  }
  RVec a1 = rvec_zero(n);
  Rational a0(0);
  for (int k = 0; k < n; ++k) {
    Rational t(0);
    for (int j = 0; j < n; ++j) t -= 2 * lambda * s.P2[k][j] * c.Gamma_tr[j];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) t -= c.Gamma[k][i][j] * s.P2[i][j];
    }
    a1[k] = t;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational t = -lambda * c.dGamma_tr[i][j] +
                   lambda * lambda * c.Gamma_tr[i] * c.Gamma_tr[j];
      for (int k = 0; k < n; ++k) t += lambda * c.Gamma[k][i][j] * c.Gamma_tr[k];
      a0 += s.P2[i][j] * t;
    }
  }

  // First-derivative and double-divergence blocks of the quadratic part.
  RVec U = rvec_zero(n);
  if (n >= 2) {
    const Rational b1 = coefficient_or_throw(cs.beta1, "beta1");
    const Rational b2 = coefficient_or_throw(cs.beta2, "beta2");
    const Rational b3 = coefficient_or_throw(cs.beta3, "beta3");
    const Rational b4 = coefficient_or_throw(cs.beta4, "beta4");
    for (int j = 0; j < n; ++j) {
      Rational t = b1 * q.V[j];
      for (int i = 0; i < n; ++i) t += b2 * c.g_inv[i][j] * q.Wtr[i];
      U[j] = t;
    }
    a0 += b3 * q.DD + b4 * q.DD4;
  } else {
    const Rational b1 = coefficient_or_throw(cs.one_dim_first, "b1");
    const Rational b0 = coefficient_or_throw(cs.one_dim_zero, "b0");
    U[0] = b1 * q.V[0];
    a0 += b0 * q.DD;
  }
  for (int j = 0; j < n; ++j) {
    a1[j] += U[j];
    a0 -= lambda * c.Gamma_tr[j] * U[j];
  }

  // Curvature terms.
  if (n >= 3) {
    const CurvatureCoefficients cc = curvature_coefficients(cs);
    if (cc.first != 0 || cc.second != 0) {
      Rational ric(0), tr(0);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          ric += c.Ric[i][j] * s.P2[i][j];
          tr += m.g[i][j] * s.P2[i][j];
        }
      }
      a0 += cc.first * ric + cc.second * c.R * tr;
    }
  } else if (n == 2) {
    const CurvatureCoefficients cc = curvature_coefficients(cs);
    if (cc.first != 0 || cc.second != 0) {
      const SchwarzianTensor sch = schwarzian_nd(presentation->factor, m);
      Rational sp(0), tr(0);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          sp += sch.S[i][j] * s.P2[i][j];
          tr += m.g[i][j] * s.P2[i][j];
        }
      }
      a0 += cc.first * sp + cc.second * c.R * tr;
    }
  } else {
    // One dimension: c1 = lambda - (2 - delta) b0 multiplies the
    // presentation Schwarzian.  This reproduces the closed form
    // -2 lambda (mu-1)/(3 - 2 delta) off resonance and is the unique
    // choice keeping the map metric-independent on the line.
    const Rational b0 = coefficient_or_throw(cs.one_dim_zero, "b0");
    const Rational c1 = lambda - (Rational(2) - delta) * b0;
    if (c1 != 0) {
      const Rational sch = schwarzian_nd(presentation->factor, m).scalar();
      a0 += c1 * sch * s.P2[0][0];
    }
  }

  // First-order block P1^i nabla_i + alpha nabla_i(P1^i), and the symbol's
  // scalar part.
  a0 += s.P0;
  bool p1_present = false;
  for (int i = 0; i < n && !p1_present; ++i) {
    if (s.P1[i] != 0) p1_present = true;
    for (int j = 0; j < n && !p1_present; ++j) {
      if (s.dP1[i][j] != 0) p1_present = true;
    }
  }
  if (p1_present) {
    const Rational alpha = coefficient_or_throw(cs.alpha, "alpha");
    Rational div(0);
    for (int i = 0; i < n; ++i) {
      a1[i] += s.P1[i];
      a0 -= lambda * c.Gamma_tr[i] * s.P1[i];
      div += s.dP1[i][i] + (Rational(1) - delta) * c.Gamma_tr[i] * s.P1[i];
    }
    a0 += alpha * div;
  }

  for (int j = 0; j < n; ++j) op.A1[j] = ExactScalar(a1[j]);
  op.A0 = ExactScalar(a0);
  return op;
}

PointOperator scale(const PointOperator& op, const ExactScalar& f) {
  PointOperator out = op;
  for (auto& row : out.A2) {
    for (auto& e : row) e = f * e;
  }
  for (auto& e : out.A1) e = f * e;
  out.A0 = f * out.A0;
  return out;
}

PointOperator add(const PointOperator& a, const PointOperator& b) {
  PointOperator out = a;
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) out.A2[i][j] += b.A2[i][j];
    out.A1[i] += b.A1[i];
  }
  out.A0 += b.A0;
  return out;
}

// The Laplacian g^{ij} nabla_i nabla_j on lambda-densities, plus an
// explicit multiple of a scalar, all times -hbar^2.
PointOperator laplacian_plus_scalar(const MetricJet2& m,
                                    const Rational& lambda, const Rational& mu,
                                    const Rational& scalar_term,
                                    const Rational& hbar) {
  const int n = m.n;
  const CurvatureData c = curvature_from_jets(m);
  const Rational h2 = -hbar * hbar;
  PointOperator op = PointOperator::zero(n, lambda, mu);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) op.A2[i][j] = ExactScalar(h2 * c.g_inv[i][j]);
  }
  for (int k = 0; k < n; ++k) {
    Rational t(0);
    for (int j = 0; j < n; ++j) t -= 2 * lambda * c.g_inv[k][j] * c.Gamma_tr[j];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) t -= c.g_inv[i][j] * c.Gamma[k][i][j];
    }
    op.A1[k] = ExactScalar(h2 * t);
  }
  Rational a0(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational t = -lambda * c.dGamma_tr[i][j] +
                   lambda * lambda * c.Gamma_tr[i] * c.Gamma_tr[j];
      for (int k = 0; k < n; ++k) t += lambda * c.Gamma[k][i][j] * c.Gamma_tr[k];
      a0 += c.g_inv[i][j] * t;
    }
  }
  op.A0 = ExactScalar(h2 * (a0 + scalar_term));
  return op;
}

}  // namespace

SymbolJet2::SymbolJet2(int n_, RMat P2_, RTen3 dP2_, RTen4 ddP2_, RVec P1_,
                       RMat dP1_, Rational P0_)
    : n(n_),
      P2(std::move(P2_)),
      dP2(std::move(dP2_)),
      ddP2(std::move(ddP2_)),
      P1(std::move(P1_)),
      dP1(std::move(dP1_)),
      P0(std::move(P0_)) {
  if (n < 1) throw std::invalid_argument("SymbolJet2: dimension must be >= 1");
  check_symmetric(P2, n, "SymbolJet2 P2");
  if (static_cast<int>(dP2.size()) != n ||
      static_cast<int>(ddP2.size()) != n) {
    throw std::invalid_argument("SymbolJet2: jet arrays have wrong size");
  }
  for (int k = 0; k < n; ++k) {
    check_symmetric(dP2[k], n, "SymbolJet2 dP2");
    if (static_cast<int>(ddP2[k].size()) != n) {
      throw std::invalid_argument("SymbolJet2: jet arrays have wrong size");
    }
    for (int l = 0; l < n; ++l) {
      check_symmetric(ddP2[k][l], n, "SymbolJet2 ddP2");
      if (l < k && ddP2[k][l] != ddP2[l][k]) {
        throw std::invalid_argument(
            "SymbolJet2: mixed partials of P2 must be symmetric");
      }
    }
  }
  if (static_cast<int>(P1.size()) != n || static_cast<int>(dP1.size()) != n) {
    throw std::invalid_argument("SymbolJet2: jet arrays have wrong size");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(dP1[i].size()) != n) {
      throw std::invalid_argument("SymbolJet2: jet arrays have wrong size");
    }
  }
}

SymbolJet2 SymbolJet2::zero(int n) {
  return SymbolJet2(n, rmat_zero(n), rten3_zero(n), rten4_zero(n),
                    rvec_zero(n), rmat_zero(n), Rational(0));
}

ConnectionJet::ConnectionJet(int n_, RVec A_, RMat dA_)
    : n(n_), A(std::move(A_)), dA(std::move(dA_)) {
  if (n < 1) {
    throw std::invalid_argument("ConnectionJet: dimension must be >= 1");
  }
  if (static_cast<int>(A.size()) != n || static_cast<int>(dA.size()) != n) {
    throw std::invalid_argument("ConnectionJet: jet arrays have wrong size");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(dA[i].size()) != n) {
      throw std::invalid_argument("ConnectionJet: jet arrays have wrong size");
    }
  }
}

PointOperator PointOperator::zero(int n, const Rational& lambda,
                                  const Rational& mu) {
  PointOperator op;
  op.n = n;
  op.A2.assign(n, std::vector<ExactScalar>(n));
  op.A1.assign(n, ExactScalar());
  op.A0 = ExactScalar();
  op.lambda = lambda;
  op.mu = mu;
  return op;
}

bool operator==(const PointOperator& a, const PointOperator& b) {
  return a.n == b.n && a.lambda == b.lambda && a.mu == b.mu && a.A2 == b.A2 &&
         a.A1 == b.A1 && a.A0 == b.A0;
}

Rational point_operator_distance(const PointOperator& a,
                                 const PointOperator& b) {
  if (a.n != b.n || a.lambda != b.lambda || a.mu != b.mu) {
    throw std::invalid_argument(
        "point_operator_distance: operators act between different spaces");
  }
  Rational d(0);
  auto take = [&d](const Rational& v) {
    if (d < v) d = v;
  };
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) take(scalar_norm(a.A2[i][j] - b.A2[i][j]));
    take(scalar_norm(a.A1[i] - b.A1[i]));
  }
  take(scalar_norm(a.A0 - b.A0));
  return d;
}

PointOperator quantize_first_order(const QuantizationParams& params,
                                   const MetricJet2& m, const SymbolJet2& s) {
  const int n = m.n;
  check_dims(n, s.n, "quantize_first_order");
  check_dims(n, params.weights.n(), "quantize_first_order");
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (s.P2[i][j] != 0 || s.dP2[k][i][j] != 0 ||
              s.ddP2[k][l][i][j] != 0) {
            throw std::invalid_argument(
                "quantize_first_order: symbol has a quadratic part");
          }
        }
      }
    }
  }
  const CoefficientSet cs = params.resolve();
  const Rational alpha = coefficient_or_throw(cs.alpha, "alpha");
  const Rational lambda = cs.lambda;
  const Rational delta = cs.delta;
  const CurvatureData c = curvature_from_jets(m);

  PointOperator op = PointOperator::zero(n, cs.lambda, cs.mu);
  Rational a0 = s.P0;
  for (int i = 0; i < n; ++i) {
    op.A1[i] = ExactScalar(s.P1[i]);
    a0 += -lambda * c.Gamma_tr[i] * s.P1[i] +
          alpha * (s.dP1[i][i] +
                   (Rational(1) - delta) * c.Gamma_tr[i] * s.P1[i]);
  }
  op.A0 = ExactScalar(a0);
  return op;
}

PointOperator quantize_second_order(
    const QuantizationParams& params, const MetricJet2& m, const SymbolJet2& s,
    const std::optional<Presentation>& presentation) {
  check_dims(m.n, params.weights.n(), "quantize_second_order");
  return assemble(resolve_full(params), m, s, presentation);
}

PointOperator point_operator_with(
    const CoefficientSet& cs, const MetricJet2& m, const SymbolJet2& s,
    const std::optional<Presentation>& presentation) {
  return assemble(cs, m, s, presentation);
}

PointOperator quantize_second_order_hbar(
    const QuantizationParams& params, const MetricJet2& m, const SymbolJet2& s,
    const Rational& hbar, const std::optional<Presentation>& presentation) {
  check_dims(m.n, params.weights.n(), "quantize_second_order");
  const CoefficientSet cs = resolve_full(params);

  SymbolJet2 quad = SymbolJet2::zero(m.n);
  quad.P2 = s.P2;
  quad.dP2 = s.dP2;
  quad.ddP2 = s.ddP2;
  SymbolJet2 lin = SymbolJet2::zero(m.n);
  lin.P1 = s.P1;
  lin.dP1 = s.dP1;
  SymbolJet2 scalar = SymbolJet2::zero(m.n);
  scalar.P0 = s.P0;

  const ExactScalar ih = ExactScalar(Rational(0), hbar);
  PointOperator out =
      scale(assemble(cs, m, quad, presentation), ih * ih);
  out = add(out, scale(assemble(cs, m, lin, presentation), ih));
  return add(out, assemble(cs, m, scalar, presentation));
}

Rational conformal_invariance_residual(
    const QuantizationParams& params, const MetricJet2& m,
    const ConformalFactorJet& f, const SymbolJet2& s,
    const std::optional<Presentation>& presentation) {
  check_dims(m.n, f.n, "conformal_invariance_residual");
  const PointOperator base = quantize_second_order(params, m, s, presentation);
  if (m.n <= 2) {
    // require_presented has already run inside the base quantization.
    const Presentation rescaled{factor_product(f, presentation->factor),
                                presentation->base};
    const PointOperator other = quantize_second_order(
        params, rescaled.metric_jets(), s, rescaled);
    return point_operator_distance(base, other);
  }
  const PointOperator other =
      quantize_second_order(params, conformal_rescale(m, f), s, std::nullopt);
  return point_operator_distance(base, other);
}

ConformalFactorJet det_power_jets(const MetricJet2& m, long k) {
  const int n = m.n;
  const RMat ginv = m.g_inverse();

  // det jets by Jacobi's formula: d_i det = det * tr(g^{-1} d_i g).
  Rational det(1);
  {
    // Reuse the metric's own inverse routine for the determinant via
    // Gaussian elimination on a copy.
    RMat a = m.g;
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int row = col; row < n; ++row) {
        if (a[row][col] != 0) {
          pivot = row;
          break;
        }
      }
      if (pivot < 0) throw std::domain_error("det_power_jets: singular metric");
      if (pivot != col) {
        std::swap(a[pivot], a[col]);
        det = -det;
      }
      det *= a[col][col];
      for (int row = col + 1; row < n; ++row) {
        const Rational fac = a[row][col] / a[col][col];
        for (int j = col; j < n; ++j) a[row][j] -= fac * a[col][j];
      }
    }
  }

  RVec trace1 = rvec_zero(n);
  for (int i = 0; i < n; ++i) {
    Rational t(0);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) t += ginv[a][b] * m.dg[i][b][a];
    }
    trace1[i] = t;
  }
  RVec ddet = rvec_zero(n);
  for (int i = 0; i < n; ++i) ddet[i] = det * trace1[i];
  RMat dddet = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // d_i d_j det = d_i det * tr_j + det * d_i(tr_j) with
      // d_i(tr_j) = tr(-g^{-1} d_i g g^{-1} d_j g + g^{-1} d_i d_j g).
      Rational dtr(0);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          dtr += ginv[a][b] * m.ddg[i][j][b][a];
          for (int c2 = 0; c2 < n; ++c2) {
            for (int d2 = 0; d2 < n; ++d2) {
              dtr -= ginv[a][b] * m.dg[i][b][c2] * ginv[c2][d2] *
                     m.dg[j][d2][a];
            }
          }
        }
      }
      dddet[i][j] = ddet[i] * trace1[j] + det * dtr;
    }
  }

  // |det|^k jets via u = |det| and the integer power rule.
  const int sign = det < 0 ? -1 : 1;
  const Rational u = sign * det;
  RVec du = rvec_zero(n);
  RMat ddu = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    du[i] = sign * ddet[i];
    for (int j = 0; j < n; ++j) ddu[i][j] = sign * dddet[i][j];
  }

  auto upow = [&u](long e) {
    Rational r(1);
    const Rational base = e >= 0 ? u : Rational(1 / u);
    for (long t = e >= 0 ? e : -e; t > 0; --t) r *= base;
    return r;
  };
  const Rational t0 = upow(k);
  const Rational t1 = Rational(k) * upow(k - 1);
  const Rational t2 = Rational(k) * Rational(k - 1) * upow(k - 2);
  RVec dt = rvec_zero(n);
  RMat ddt = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    dt[i] = t1 * du[i];
    for (int j = 0; j < n; ++j) {
      ddt[i][j] = t2 * du[i] * du[j] + t1 * ddu[i][j];
    }
  }
  return ConformalFactorJet(n, t0, dt, ddt);
}

SymbolJet2 hamiltonian_jets(const MetricJet2& m, const Rational& delta) {
  const Rational half = delta / 2;
  if (half.get_den() != 1) {
    throw std::invalid_argument(
        "hamiltonian_jets: |det g|^{delta/2} has rational jets only for "
        "even integer delta");
  }
  const long k = half.get_num().get_si();
  const ConformalFactorJet t = det_power_jets(m, k);

  const int n = m.n;
  const RMat ginv = m.g_inverse();
  RTen3 dginv = rten3_zero(n);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational v(0);
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            v -= ginv[i][a] * m.dg[l][a][b] * ginv[b][j];
          }
        }
        dginv[l][i][j] = v;
      }
    }
  }
  RTen4 ddginv = rten4_zero(n);
  for (int k2 = 0; k2 < n; ++k2) {
    for (int l = 0; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Rational v(0);
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
              v -= dginv[l][i][a] * m.dg[k2][a][b] * ginv[b][j];
              v -= ginv[i][a] * m.ddg[k2][l][a][b] * ginv[b][j];
              v -= ginv[i][a] * m.dg[k2][a][b] * dginv[l][b][j];
            }
          }
          ddginv[k2][l][i][j] = v;
        }
      }
    }
  }

  SymbolJet2 s = SymbolJet2::zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s.P2[i][j] = t.F * ginv[i][j];
      for (int a = 0; a < n; ++a) {
        s.dP2[a][i][j] = t.dF[a] * ginv[i][j] + t.F * dginv[a][i][j];
        for (int b = 0; b < n; ++b) {
          s.ddP2[a][b][i][j] = t.ddF[a][b] * ginv[i][j] +
                               t.dF[a] * dginv[b][i][j] +
                               t.dF[b] * dginv[a][i][j] +
                               t.F * ddginv[a][b][i][j];
        }
      }
    }
  }
  return s;
}

PointOperator quantize_geodesic(const QuantizationParams& params,
                                const MetricJet2& m, const Rational& hbar) {
  const Weights& w = params.weights;
  check_dims(m.n, w.n(), "quantize_geodesic");
  if (m.n < 2) {
    throw std::invalid_argument(
        "quantize_geodesic: needs dimension >= 2 (use the Sturm-Liouville "
        "operator on the line)");
  }
  require_admissible(params);
  const Rational C = geodesic_coefficient(m.n, w.lambda, w.mu);
  const Rational R = curvature_from_jets(m).R;
  return laplacian_plus_scalar(m, w.lambda, w.mu, C * R, hbar);
}

PointOperator quantize_minimal_coupling(const QuantizationParams& params,
                                        const MetricJet2& m,
                                        const ConnectionJet& a,
                                        const Rational& hbar) {
  const Weights& w = params.weights;
  const int n = m.n;
  check_dims(n, w.n(), "quantize_minimal_coupling");
  check_dims(n, a.n, "quantize_minimal_coupling");
  if (n < 2) {
    throw std::invalid_argument(
        "quantize_minimal_coupling: needs dimension >= 2");
  }
  if (hbar == 0) {
    throw std::invalid_argument(
        "quantize_minimal_coupling: hbar must be nonzero");
  }
  require_admissible(params);

  const Rational lambda = w.lambda;
  const Rational mu = w.mu;
  const Rational delta = w.delta();
  const CurvatureData c = curvature_from_jets(m);
  const Rational C = geodesic_coefficient(n, lambda, mu);

  // Coefficient of the gauge-dependent first-order anomaly
  // i hbar (1 - lambda - mu)/(1 - delta) g^{jk} nabla_j A_k.
  Rational anomaly(0);
  if (lambda + mu != 1) {
    if (delta == 1) {
      throw std::logic_error(
          "minimal coupling: anomaly coefficient singular at admissible "
          "weights");
    }
    anomaly = (Rational(1) - lambda - mu) / (Rational(1) - delta);
  }

  const Rational h2 = -hbar * hbar;
  PointOperator op = PointOperator::zero(n, lambda, mu);

  // (nabla_j + (i/hbar) A_j)(nabla_k + (i/hbar) A_k) on lambda-densities,
  // contracted with g^{jk}.
  std::vector<ExactScalar> cvec(n), dcontr(n);
  for (int k = 0; k < n; ++k) {
    cvec[k] = ExactScalar(Rational(-lambda * c.Gamma_tr[k]),
                          Rational(a.A[k] / hbar));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      op.A2[i][j] = ExactScalar(h2 * c.g_inv[i][j]);
    }
  }
  for (int k = 0; k < n; ++k) {
    ExactScalar t;
    for (int j = 0; j < n; ++j) {
      t += ExactScalar(2 * c.g_inv[k][j]) * cvec[j];
    }
    for (int i2 = 0; i2 < n; ++i2) {
      for (int j = 0; j < n; ++j) {
        t -= ExactScalar(c.g_inv[i2][j] * c.Gamma[k][i2][j]);
      }
    }
    op.A1[k] = ExactScalar(h2) * t;
  }
  ExactScalar a0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      ExactScalar t = ExactScalar(Rational(-lambda * c.dGamma_tr[j][k]),
                                  Rational(a.dA[j][k] / hbar));
      for (int m2 = 0; m2 < n; ++m2) {
        t -= ExactScalar(c.Gamma[m2][j][k]) * cvec[m2];
      }
      t += cvec[j] * cvec[k];
      a0 += ExactScalar(c.g_inv[j][k]) * t;
    }
  }
  a0 = ExactScalar(h2) * a0 + ExactScalar(h2 * C * c.R);
  if (anomaly != 0) {
    Rational divA(0);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Rational t = a.dA[j][k];
        for (int m2 = 0; m2 < n; ++m2) t -= c.Gamma[m2][j][k] * a.A[m2];
        divA += c.g_inv[j][k] * t;
      }
    }
    a0 += ExactScalar(Rational(0), hbar * anomaly * divA);
  }
  op.A0 = a0;
  return op;
}

std::pair<Rational, Rational> resonant_laplacian_weights(ResonantLaplacian op,
                                                         int n) {
  switch (op) {
    case ResonantLaplacian::kYamabe:
      if (n < 2) {
        throw std::invalid_argument("yamabe weights need dimension >= 2");
      }
      return {make_rational(n - 2, 2 * n), make_rational(n + 2, 2 * n)};
    case ResonantLaplacian::kLaplace:
      return {Rational(0), Rational(1)};
    case ResonantLaplacian::kNewLaplacian:
      if (n < 2) {
        throw std::invalid_argument(
            "the third resonant laplacian needs dimension >= 2");
      }
      return {make_rational(-1, n), make_rational(n + 1, n)};
    case ResonantLaplacian::kSturmLiouville:
      if (n != 1) {
        throw std::invalid_argument(
            "the Sturm-Liouville operator lives on the line");
      }
      return {make_rational(-1, 2), make_rational(3, 2)};
  }
  throw std::invalid_argument("unknown resonant laplacian");
}

Rational resonant_scalar_coefficient(ResonantLaplacian op, int n) {
  switch (op) {
    case ResonantLaplacian::kYamabe:
      if (n < 2) {
        throw std::invalid_argument("yamabe weights need dimension >= 2");
      }
      return make_rational(-(n - 2), 4 * (n - 1));
    case ResonantLaplacian::kLaplace:
      return Rational(0);
    case ResonantLaplacian::kNewLaplacian:
      if (n < 2) {
        throw std::invalid_argument(
            "the third resonant laplacian needs dimension >= 2");
      }
      return make_rational(1, (n - 1) * (n + 2));
    case ResonantLaplacian::kSturmLiouville:
      if (n != 1) {
        throw std::invalid_argument(
            "the Sturm-Liouville operator lives on the line");
      }
      return make_rational(-1, 2);  // multiplies S / g
  }
  throw std::invalid_argument("unknown resonant laplacian");
}

PointOperator resonant_laplacian(ResonantLaplacian op, const MetricJet2& m,
                                 const Rational& hbar,
                                 const std::optional<Presentation>& presentation) {
  const auto [lambda, mu] = resonant_laplacian_weights(op, m.n);
  if (op == ResonantLaplacian::kSturmLiouville) {
    if (!presentation.has_value()) {
      throw PresentationRequiredError(
          "the Sturm-Liouville operator needs a conformally flat "
          "presentation for its Schwarzian term");
    }
    require_presented(m, *presentation, "resonant_laplacian");
    const Rational sch = schwarzian_nd(presentation->factor, m).scalar();
    // -hbar^2 (Laplacian - S/(2g)).
    const Rational term = -sch / (2 * m.g[0][0]);
    return laplacian_plus_scalar(m, lambda, mu, term, hbar);
  }
  if (m.n < 2) {
    throw std::invalid_argument(
        "resonant_laplacian: this operator needs dimension >= 2");
  }
  const Rational cr = resonant_scalar_coefficient(op, m.n);
  const Rational R = curvature_from_jets(m).R;
  return laplacian_plus_scalar(m, lambda, mu, cr * R, hbar);
}

}  // namespace confquant
