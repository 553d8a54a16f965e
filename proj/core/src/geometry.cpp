#include "confquant/geometry.hpp"

#include <stdexcept>
#include <utility>

#include "confquant/errors.hpp"
#include "confquant/linsolve.hpp"

namespace confquant {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

RVec rvec_zero(int n) { return RVec(n, Rational(0)); }

RMat rmat_zero(int n) { return RMat(n, RVec(n, Rational(0))); }

RTen3 rten3_zero(int n) { return RTen3(n, rmat_zero(n)); }

RTen4 rten4_zero(int n) { return RTen4(n, rten3_zero(n)); }

MetricJet2::MetricJet2(int n_, RMat g_, RTen3 dg_, RTen4 ddg_)
    : n(n_), g(std::move(g_)), dg(std::move(dg_)), ddg(std::move(ddg_)) {
  require(n >= 1, "MetricJet2: dimension must be >= 1");
  require(static_cast<int>(g.size()) == n, "MetricJet2: g has wrong shape");
  for (const auto& row : g) {
    require(static_cast<int>(row.size()) == n, "MetricJet2: g has wrong shape");
  }
  require(static_cast<int>(dg.size()) == n, "MetricJet2: dg has wrong shape");
  require(static_cast<int>(ddg.size()) == n, "MetricJet2: ddg has wrong shape");
  for (int k = 0; k < n; ++k) {
    require(static_cast<int>(dg[k].size()) == n,
            "MetricJet2: dg has wrong shape");
    require(static_cast<int>(ddg[k].size()) == n,
            "MetricJet2: ddg has wrong shape");
    for (int i = 0; i < n; ++i) {
      require(static_cast<int>(dg[k][i].size()) == n,
              "MetricJet2: dg has wrong shape");
      for (int l = 0; l < n; ++l) {
        require(static_cast<int>(ddg[k][l].size()) == n,
                "MetricJet2: ddg has wrong shape");
        for (int i2 = 0; i2 < n; ++i2) {
          require(static_cast<int>(ddg[k][l][i2].size()) == n,
                  "MetricJet2: ddg has wrong shape");
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      require(g[i][j] == g[j][i], "MetricJet2: g must be symmetric");
      for (int k = 0; k < n; ++k) {
        require(dg[k][i][j] == dg[k][j][i],
                "MetricJet2: dg must be symmetric in the metric indices");
        for (int l = 0; l < n; ++l) {
          require(ddg[k][l][i][j] == ddg[k][l][j][i],
                  "MetricJet2: ddg must be symmetric in the metric indices");
        }
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < k; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          require(ddg[k][l][i][j] == ddg[l][k][i][j],
                  "MetricJet2: ddg must be symmetric in the derivatives");
        }
      }
    }
  }
  g_inverse();  // rejects singular g
}

MetricJet2 MetricJet2::constant(const RMat& g0) {
  const int n = static_cast<int>(g0.size());
  return MetricJet2(n, g0, rten3_zero(n), rten4_zero(n));
}

MetricJet2 MetricJet2::flat(const FlatMetric& m) {
  RMat g0 = rmat_zero(m.n());
  for (int i = 0; i < m.n(); ++i) g0[i][i] = Rational(m.sign(i));
  return constant(g0);
}

RMat MetricJet2::g_inverse() const { return invert_exact(g); }

ConformalFactorJet::ConformalFactorJet(int n_, Rational F_, RVec dF_, RMat ddF_)
    : n(n_), F(std::move(F_)), dF(std::move(dF_)), ddF(std::move(ddF_)) {
  require(n >= 1, "ConformalFactorJet: dimension must be >= 1");
  require(F > 0, "ConformalFactorJet: F must be positive");
  require(static_cast<int>(dF.size()) == n,
          "ConformalFactorJet: dF has wrong shape");
  require(static_cast<int>(ddF.size()) == n,
          "ConformalFactorJet: ddF has wrong shape");
  for (const auto& row : ddF) {
    require(static_cast<int>(row.size()) == n,
            "ConformalFactorJet: ddF has wrong shape");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      require(ddF[i][j] == ddF[j][i],
              "ConformalFactorJet: ddF must be symmetric");
    }
  }
}

ConformalFactorJet ConformalFactorJet::constant(int n, const Rational& value) {
  return ConformalFactorJet(n, value, rvec_zero(n), rmat_zero(n));
}

CurvatureData curvature_from_jets(const MetricJet2& m) {
  const int n = m.n;
  CurvatureData c;
  c.n = n;
  c.g_inv = m.g_inverse();

  // d_l g^{km} = -(g^{-1} dg_l g^{-1})^{km}
  RTen3 dginv = rten3_zero(n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int mm = 0; mm < n; ++mm) {
        Rational s(0);
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            s += c.g_inv[k][a] * m.dg[l][a][b] * c.g_inv[b][mm];
          }
        }
        dginv[l][k][mm] = Rational(-s);
      }
    }
  }

  c.Gamma = rten3_zero(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s(0);
        for (int l = 0; l < n; ++l) {
          s += c.g_inv[k][l] * (m.dg[i][l][j] + m.dg[j][l][i] - m.dg[l][i][j]);
        }
        c.Gamma[k][i][j] = Rational(s / 2);
      }
    }
  }

  c.dGamma = rten4_zero(n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Rational s(0);
          for (int a = 0; a < n; ++a) {
            s += dginv[l][k][a] *
                 (m.dg[i][a][j] + m.dg[j][a][i] - m.dg[a][i][j]);
            s += c.g_inv[k][a] * (m.ddg[l][i][a][j] + m.ddg[l][j][a][i] -
                                  m.ddg[l][a][i][j]);
          }
          c.dGamma[l][k][i][j] = Rational(s / 2);
        }
      }
    }
  }

  c.Gamma_tr = rvec_zero(n);
  c.dGamma_tr = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    Rational s(0);
    for (int j = 0; j < n; ++j) s += c.Gamma[j][j][i];
    c.Gamma_tr[i] = s;
    for (int l = 0; l < n; ++l) {
      Rational t(0);
      for (int j = 0; j < n; ++j) t += c.dGamma[l][j][j][i];
      c.dGamma_tr[l][i] = t;
    }
  }

  c.Ric = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s(0);
      for (int k = 0; k < n; ++k) {
        s += c.dGamma[k][k][i][j];
      }
      s -= c.dGamma_tr[i][j];
      for (int mm = 0; mm < n; ++mm) {
        s += c.Gamma_tr[mm] * c.Gamma[mm][i][j];
        for (int k = 0; k < n; ++k) {
          s -= c.Gamma[k][i][mm] * c.Gamma[mm][k][j];
        }
      }
      c.Ric[i][j] = s;
    }
  }

  Rational r(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r += c.g_inv[i][j] * c.Ric[i][j];
  }
  c.R = r;
  return c;
}

MetricJet2 conformal_rescale(const MetricJet2& m, const ConformalFactorJet& f) {
  require(m.n == f.n, "conformal_rescale: dimension mismatch");
  const int n = m.n;
  RMat g = rmat_zero(n);
  RTen3 dg = rten3_zero(n);
  RTen4 ddg = rten4_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g[i][j] = Rational(f.F * m.g[i][j]);
      for (int k = 0; k < n; ++k) {
        dg[k][i][j] = Rational(f.dF[k] * m.g[i][j] + f.F * m.dg[k][i][j]);
        for (int l = 0; l < n; ++l) {
          ddg[k][l][i][j] =
              Rational(f.ddF[k][l] * m.g[i][j] + f.dF[k] * m.dg[l][i][j] +
                       f.dF[l] * m.dg[k][i][j] + f.F * m.ddg[k][l][i][j]);
        }
      }
    }
  }
  return MetricJet2(n, std::move(g), std::move(dg), std::move(ddg));
}

namespace {

// Hessian of F with the base metric's connection, its g-trace and the
// squared gradient, shared by the closed-form rescaling laws.
struct FactorDerived {
  RMat hess;
  Rational lap;
  Rational grad2;
  RVec dF_up;  // F^k = g^{jk} F_j
};

FactorDerived factor_derived(const MetricJet2& m, const CurvatureData& c,
                             const ConformalFactorJet& f) {
  const int n = m.n;
  FactorDerived d;
  d.hess = rmat_zero(n);
  d.lap = Rational(0);
  d.grad2 = Rational(0);
  d.dF_up = rvec_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s = f.ddF[i][j];
      for (int k = 0; k < n; ++k) s -= c.Gamma[k][i][j] * f.dF[k];
      d.hess[i][j] = s;
      d.lap += c.g_inv[i][j] * s;
      d.grad2 += c.g_inv[i][j] * f.dF[i] * f.dF[j];
      d.dF_up[i] += c.g_inv[j][i] * f.dF[j];
    }
  }
  return d;
}

}  // namespace

RTen3 christoffel_rescaled(const MetricJet2& m, const CurvatureData& c,
                           const ConformalFactorJet& f) {
  require(m.n == f.n, "christoffel_rescaled: dimension mismatch");
  const int n = m.n;
  FactorDerived d = factor_derived(m, c, f);
  RTen3 out = rten3_zero(n);
  const Rational half_over_F = Rational(1) / (2 * f.F);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s = c.Gamma[k][i][j];
        Rational corr(0);
        if (k == j) corr += f.dF[i];
        if (k == i) corr += f.dF[j];
        corr -= d.dF_up[k] * m.g[i][j];
        out[k][i][j] = Rational(s + half_over_F * corr);
      }
    }
  }
  return out;
}

RMat ricci_rescaled(const MetricJet2& m, const CurvatureData& c,
                    const ConformalFactorJet& f) {
  require(m.n == f.n, "ricci_rescaled: dimension mismatch");
  const int n = m.n;
  FactorDerived d = factor_derived(m, c, f);
  const Rational F2 = Rational(f.F * f.F);
  const Rational scal =
      Rational(d.lap / f.F + Rational(n - 4) / 2 * d.grad2 / F2);
  RMat out = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s = c.Ric[i][j];
      s -= Rational(n - 2) / 2 *
           (d.hess[i][j] / f.F - Rational(3) / 2 * f.dF[i] * f.dF[j] / F2);
      s -= scal / 2 * m.g[i][j];
      out[i][j] = s;
    }
  }
  return out;
}

Rational scalar_curvature_rescaled(const MetricJet2& m, const CurvatureData& c,
                                   const ConformalFactorJet& f) {
  require(m.n == f.n, "scalar_curvature_rescaled: dimension mismatch");
  const int n = m.n;
  FactorDerived d = factor_derived(m, c, f);
  const Rational F2 = Rational(f.F * f.F);
  const Rational F3 = Rational(F2 * f.F);
  return Rational(c.R / f.F -
                  Rational(n - 1) *
                      (d.lap / F2 + Rational(n - 6) / 4 * d.grad2 / F3));
}

ConformalFactorJet factor_product(const ConformalFactorJet& a,
                                  const ConformalFactorJet& b) {
  require(a.n == b.n, "factor_product: dimension mismatch");
  const int n = a.n;
  RVec dF = rvec_zero(n);
  RMat ddF = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    dF[i] = Rational(a.dF[i] * b.F + a.F * b.dF[i]);
    for (int j = 0; j < n; ++j) {
      ddF[i][j] = Rational(a.ddF[i][j] * b.F + a.dF[i] * b.dF[j] +
                           a.dF[j] * b.dF[i] + a.F * b.ddF[i][j]);
    }
  }
  return ConformalFactorJet(n, Rational(a.F * b.F), std::move(dF),
                            std::move(ddF));
}

MetricJet2 conformally_flat_jets(const ConformalFactorJet& f,
                                 const FlatMetric& g0) {
  require(f.n == g0.n(), "conformally_flat_jets: dimension mismatch");
  return conformal_rescale(MetricJet2::flat(g0), f);
}

bool matches_presentation(const MetricJet2& m, const ConformalFactorJet& f) {
  if (m.n != f.n) return false;
  const int n = m.n;
  // Recover the candidate constant metric from the point values and check
  // that every jet level is the product-rule jet of F times it.
  RMat g0 = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g0[i][j] = Rational(m.g[i][j] / f.F);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (m.dg[k][i][j] != f.dF[k] * g0[i][j]) return false;
        for (int l = 0; l < n; ++l) {
          if (m.ddg[k][l][i][j] != f.ddF[k][l] * g0[i][j]) return false;
        }
      }
    }
  }
  return true;
}

DiffeoJet1D::DiffeoJet1D(Rational d1_, Rational d2_, Rational d3_)
    : d1(std::move(d1_)), d2(std::move(d2_)), d3(std::move(d3_)) {
  if (d1 == 0) {
    throw std::invalid_argument("DiffeoJet1D: phi' must be nonzero");
  }
}

Rational schwarzian_1d(const DiffeoJet1D& j) {
  const Rational q = Rational(j.d2 / j.d1);
  return Rational(j.d3 / j.d1 - Rational(3) / 2 * q * q);
}

Rational SchwarzianTensor::scalar() const {
  if (n != 1) {
    throw std::logic_error("SchwarzianTensor::scalar: only defined for n = 1");
  }
  return S[0][0];
}

SchwarzianTensor schwarzian_nd(const ConformalFactorJet& f,
                               const MetricJet2& m) {
  if (m.n != f.n) {
    throw std::invalid_argument("schwarzian_nd: dimension mismatch");
  }
  if (!matches_presentation(m, f)) {
    throw PresentationRequiredError(
        "schwarzian_nd: metric jets are not the conformally flat "
        "presentation F * g0 for the supplied factor");
  }
  const int n = m.n;
  const RMat g_inv = m.g_inverse();
  Rational grad2(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) grad2 += g_inv[i][j] * f.dF[i] * f.dF[j];
  }
  const Rational F2 = Rational(f.F * f.F);
  SchwarzianTensor out;
  out.n = n;
  out.S = rmat_zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.S[i][j] =
          Rational(f.ddF[i][j] / (2 * f.F) -
                   Rational(3) / 4 * f.dF[i] * f.dF[j] / F2 +
                   grad2 / 8 / F2 * m.g[i][j]);
    }
  }
  return out;
}

}  // namespace confquant
