#include "confquant/diff_op.hpp"

#include <functional>
#include <stdexcept>

namespace confquant {

namespace {

void check_multi_index(int n, const std::vector<int>& a) {
  if (static_cast<int>(a.size()) != n) {
    throw std::invalid_argument("DensityOp: multi-index length != n");
  }
  for (int e : a) {
    if (e < 0) throw std::invalid_argument("DensityOp: negative multi-index");
  }
}

int multi_order(const std::vector<int>& a) {
  int s = 0;
  for (int e : a) s += e;
  return s;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

// Enumerates all multi-indices s with 0 <= s <= a componentwise.
void for_each_sub_index(const std::vector<int>& a,
                        const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> s(a.size(), 0);
  while (true) {
    f(s);
    std::size_t k = 0;
    while (k < a.size()) {
      if (s[k] < a[k]) {
        ++s[k];
        break;
      }
      s[k] = 0;
      ++k;
    }
    if (k == a.size()) break;
  }
}

Poly multi_partial(const Poly& f, const std::vector<int>& a) {
  Poly out = f;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int t = 0; t < a[k]; ++t) out = out.partial_x(static_cast<int>(k));
  }
  return out;
}

}  // namespace

DensityOp::DensityOp(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("DensityOp: dimension must be >= 1");
}

DensityOp DensityOp::identity(int n) {
  DensityOp op(n);
  op.add_term(std::vector<int>(n, 0), Poly::constant(n, ExactScalar(1)));
  return op;
}

DensityOp DensityOp::multiplication(const Poly& f) {
  DensityOp op(f.n());
  op.add_term(std::vector<int>(f.n(), 0), f);
  return op;
}

int DensityOp::order() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, multi_order(a));
  return d;
}

void DensityOp::add_term(const std::vector<int>& a, const Poly& coeff) {
  check_multi_index(n_, a);
  if (coeff.n() != n_) {
    throw std::invalid_argument("DensityOp: coefficient dimension mismatch");
  }
  if (!coeff.is_x_only()) {
    throw std::invalid_argument("DensityOp: coefficient must be x-only");
  }
  if (coeff.is_zero()) return;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly DensityOp::coeff(const std::vector<int>& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Poly(n_) : it->second;
}

Poly DensityOp::apply(const Poly& f) const {
  if (f.n() != n_) {
    throw std::invalid_argument("DensityOp::apply: dimension mismatch");
  }
  if (!f.is_x_only()) {
    throw std::invalid_argument("DensityOp::apply: density must be x-only");
  }
  Poly out(n_);
  for (const auto& [a, c] : terms_) out += c * multi_partial(f, a);
  return out;
}

DensityOp DensityOp::compose(const DensityOp& o) const {
  if (n_ != o.n_) {
    throw std::invalid_argument("DensityOp::compose: dimension mismatch");
  }
  // (c d^a) o (e d^b) = sum_{s <= a} binom(a, s) c (d^s e) d^{a - s + b}.
  DensityOp out(n_);
  for (const auto& [a, c] : terms_) {
    for (const auto& [b, e] : o.terms_) {
      for_each_sub_index(a, [&](const std::vector<int>& s) {
        long mult = 1;
        for (std::size_t k = 0; k < a.size(); ++k) {
          mult *= binom(a[k], s[k]);
        }
        Poly de = multi_partial(e, s);
        if (de.is_zero()) return;
        std::vector<int> target(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
          target[k] = a[k] - s[k] + b[k];
        }
        out.add_term(target, ExactScalar(mult) * (c * de));
      });
    }
  }
  return out;
}

DensityOp DensityOp::operator-() const {
  DensityOp out(n_);
  for (const auto& [a, c] : terms_) out.terms_.emplace(a, -c);
  return out;
}

DensityOp& DensityOp::operator+=(const DensityOp& o) {
  if (n_ != o.n_) throw std::invalid_argument("DensityOp: dimension mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

DensityOp& DensityOp::operator-=(const DensityOp& o) {
  if (n_ != o.n_) throw std::invalid_argument("DensityOp: dimension mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

DensityOp operator*(const ExactScalar& c, DensityOp a) {
  DensityOp out(a.n());
  if (c.is_zero()) return out;
  for (const auto& [idx, coeff] : a.terms_) {
    out.terms_.emplace(idx, c * coeff);
  }
  return out;
}

DensityOp lie_density_op(const std::vector<Poly>& X, const Rational& lambda) {
  const Poly div = field_divergence(X);
  const int n = static_cast<int>(X.size());
  DensityOp op(n);
  for (int k = 0; k < n; ++k) {
    std::vector<int> a(n, 0);
    a[k] = 1;
    op.add_term(a, X[k]);
  }
  op.add_term(std::vector<int>(n, 0), ExactScalar(lambda) * div);
  return op;
}

DensityOp lie_density_op(const FlatMetric& m, const VectorFieldGenerator& X,
                         const Rational& lambda) {
  return lie_density_op(generator_components(m, X), lambda);
}

DiffOperator2::DiffOperator2(int n_dim)
    : n(n_dim),
      A2(n_dim, std::vector<Poly>(n_dim, Poly(n_dim))),
      A1(n_dim, Poly(n_dim)),
      A0(n_dim) {
  if (n_dim < 1) {
    throw std::invalid_argument("DiffOperator2: dimension must be >= 1");
  }
}

bool DiffOperator2::is_zero() const {
  for (const auto& row : A2) {
    for (const auto& c : row) {
      if (!c.is_zero()) return false;
    }
  }
  for (const auto& c : A1) {
    if (!c.is_zero()) return false;
  }
  return A0.is_zero();
}

void DiffOperator2::validate() const {
  if (static_cast<int>(A2.size()) != n || static_cast<int>(A1.size()) != n) {
    throw std::invalid_argument("DiffOperator2: component shape mismatch");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(A2[i].size()) != n) {
      throw std::invalid_argument("DiffOperator2: A2 row length mismatch");
    }
    for (int j = 0; j < n; ++j) {
      if (A2[i][j].n() != n || !A2[i][j].is_x_only()) {
        throw std::invalid_argument("DiffOperator2: bad A2 coefficient");
      }
      if (A2[i][j] != A2[j][i]) {
        throw std::invalid_argument("DiffOperator2: A2 must be symmetric");
      }
    }
    if (A1[i].n() != n || !A1[i].is_x_only()) {
      throw std::invalid_argument("DiffOperator2: bad A1 coefficient");
    }
  }
  if (A0.n() != n || !A0.is_x_only()) {
    throw std::invalid_argument("DiffOperator2: bad A0 coefficient");
  }
}

Poly DiffOperator2::apply(const Poly& f) const {
  if (f.n() != n || !f.is_x_only()) {
    throw std::invalid_argument("DiffOperator2::apply: bad density argument");
  }
  Poly out(n);
  for (int i = 0; i < n; ++i) {
    Poly fi = f.partial_x(i);
    for (int j = 0; j < n; ++j) {
      out += A2[i][j] * fi.partial_x(j);
    }
    out += A1[i] * fi;
  }
  out += A0 * f;
  return out;
}

DiffOperator2 DiffOperator2::operator-() const {
  DiffOperator2 out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.A2[i][j] = -A2[i][j];
    out.A1[i] = -A1[i];
  }
  out.A0 = -A0;
  return out;
}

DiffOperator2& DiffOperator2::operator+=(const DiffOperator2& o) {
  if (n != o.n) throw std::invalid_argument("DiffOperator2: dim mismatch");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A2[i][j] += o.A2[i][j];
    A1[i] += o.A1[i];
  }
  A0 += o.A0;
  return *this;
}

DiffOperator2& DiffOperator2::operator-=(const DiffOperator2& o) {
  if (n != o.n) throw std::invalid_argument("DiffOperator2: dim mismatch");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A2[i][j] -= o.A2[i][j];
    A1[i] -= o.A1[i];
  }
  A0 -= o.A0;
  return *this;
}

DiffOperator2 operator*(const ExactScalar& c, DiffOperator2 a) {
  DiffOperator2 out(a.n);
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) out.A2[i][j] = c * a.A2[i][j];
    out.A1[i] = c * a.A1[i];
  }
  out.A0 = c * a.A0;
  return out;
}

bool operator==(const DiffOperator2& a, const DiffOperator2& b) {
  if (a.n != b.n) return false;
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      if (a.A2[i][j] != b.A2[i][j]) return false;
    }
    if (a.A1[i] != b.A1[i]) return false;
  }
  return a.A0 == b.A0;
}

DensityOp to_density_op(const DiffOperator2& A) {
  A.validate();
  const int n = A.n;
  DensityOp op(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::vector<int> a(n, 0);
      a[i] += 1;
      a[j] += 1;
      Poly c = (i == j) ? A.A2[i][i] : A.A2[i][j] + A.A2[j][i];
      op.add_term(a, c);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> a(n, 0);
    a[i] = 1;
    op.add_term(a, A.A1[i]);
  }
  op.add_term(std::vector<int>(n, 0), A.A0);
  return op;
}

DiffOperator2 to_diff_operator2(const DensityOp& A) {
  const int n = A.n();
  DiffOperator2 out(n);
  for (const auto& [a, c] : A.terms()) {
    const int ord = multi_order(a);
    if (ord > 2) {
      throw std::invalid_argument("to_diff_operator2: operator order > 2");
    }
    if (ord == 0) {
      out.A0 += c;
    } else if (ord == 1) {
      for (int k = 0; k < n; ++k) {
        if (a[k] == 1) out.A1[k] += c;
      }
    } else {
      int i = -1, j = -1;
      for (int k = 0; k < n; ++k) {
        if (a[k] == 2) i = j = k;
        if (a[k] == 1) (i < 0 ? i : j) = k;
      }
      if (i == j) {
        out.A2[i][i] += c;
      } else {
        Poly half = ExactScalar(make_rational(1, 2)) * c;
        out.A2[i][j] += half;
        out.A2[j][i] += half;
      }
    }
  }
  return out;
}

Poly operator_to_symbol(const DiffOperator2& A) {
  const int n = A.n;
  Poly out = A.A0;
  for (int i = 0; i < n; ++i) {
    out += A.A1[i] * Poly::var_xi(n, i);
    for (int j = 0; j < n; ++j) {
      out += A.A2[i][j] * (Poly::var_xi(n, i) * Poly::var_xi(n, j));
    }
  }
  return out;
}

DiffOperator2 symbol_to_operator(const Poly& P) {
  const int n = P.n();
  if (P.xi_degree() > 2) {
    throw std::invalid_argument("symbol_to_operator: xi-degree > 2");
  }
  DiffOperator2 out(n);
  for (const auto& [m, c] : P.terms()) {
    Monomial xm{m.x, std::vector<int>(n, 0)};
    Poly xpart(n);
    xpart.add_term(xm, c);
    const int d = m.xi_degree();
    if (d == 0) {
      out.A0 += xpart;
    } else if (d == 1) {
      for (int k = 0; k < n; ++k) {
        if (m.xi[k] == 1) out.A1[k] += xpart;
      }
    } else {
      int i = -1, j = -1;
      for (int k = 0; k < n; ++k) {
        if (m.xi[k] == 2) i = j = k;
        if (m.xi[k] == 1) (i < 0 ? i : j) = k;
      }
      if (i == j) {
        out.A2[i][i] += xpart;
      } else {
        Poly half = ExactScalar(make_rational(1, 2)) * xpart;
        out.A2[i][j] += half;
        out.A2[j][i] += half;
      }
    }
  }
  return out;
}

SymbolComponents::SymbolComponents(int n_dim)
    : n(n_dim),
      P2(n_dim, std::vector<Poly>(n_dim, Poly(n_dim))),
      P1(n_dim, Poly(n_dim)),
      P0(n_dim) {}

SymbolComponents split_symbol(const Poly& P) {
  DiffOperator2 op = symbol_to_operator(P);
  SymbolComponents c(P.n());
  c.P2 = op.A2;
  c.P1 = op.A1;
  c.P0 = op.A0;
  return c;
}

Poly join_symbol(const SymbolComponents& c) {
  DiffOperator2 op(c.n);
  op.A2 = c.P2;
  op.A1 = c.P1;
  op.A0 = c.P0;
  return operator_to_symbol(op);
}

DiffOperator2 block_identity(const SymbolComponents& c) {
  DiffOperator2 out(c.n);
  out.A2 = c.P2;
  out.A1 = c.P1;
  out.A0 = c.P0;
  return out;
}

DiffOperator2 block_alpha(const SymbolComponents& c) {
  DiffOperator2 out(c.n);
  for (int i = 0; i < c.n; ++i) out.A0 += c.P1[i].partial_x(i);
  return out;
}

DiffOperator2 block_beta1(const SymbolComponents& c) {
  DiffOperator2 out(c.n);
  for (int i = 0; i < c.n; ++i) {
    for (int j = 0; j < c.n; ++j) out.A1[i] += c.P2[i][j].partial_x(j);
  }
  return out;
}

namespace {

// g_{kl} P2^{kl} for the diagonal metric.
Poly metric_trace(const FlatMetric& m, const SymbolComponents& c) {
  Poly tr(c.n);
  for (int k = 0; k < c.n; ++k) {
    tr += ExactScalar(m.sign(k)) * c.P2[k][k];
  }
  return tr;
}

}  // namespace

DiffOperator2 block_beta2(const FlatMetric& m, const SymbolComponents& c) {
  DiffOperator2 out(c.n);
  Poly tr = metric_trace(m, c);
  for (int i = 0; i < c.n; ++i) {
    out.A1[i] = ExactScalar(m.sign(i)) * tr.partial_x(i);
  }
  return out;
}

DiffOperator2 block_beta3(const SymbolComponents& c) {
  DiffOperator2 out(c.n);
  for (int i = 0; i < c.n; ++i) {
    for (int j = 0; j < c.n; ++j) {
      out.A0 += c.P2[i][j].partial_x(i).partial_x(j);
    }
  }
  return out;
}

DiffOperator2 block_beta4(const FlatMetric& m, const SymbolComponents& c) {
  DiffOperator2 out(c.n);
  Poly tr = metric_trace(m, c);
  for (int i = 0; i < c.n; ++i) {
    out.A0 += ExactScalar(m.sign(i)) * tr.partial_x(i).partial_x(i);
  }
  return out;
}

DiffOperator2 lie_operator_defn(const std::vector<Poly>& X,
                                const Rational& lambda, const Rational& mu,
                                const DiffOperator2& A) {
  DensityOp lmu = lie_density_op(X, mu);
  DensityOp llam = lie_density_op(X, lambda);
  DensityOp a = to_density_op(A);
  DensityOp out = lmu.compose(a) - a.compose(llam);
  if (out.order() > 2) {
    throw std::logic_error(
        "lie_operator_defn: third-order terms failed to cancel");
  }
  return to_diff_operator2(out);
}

DiffOperator2 lie_operator_defn(const FlatMetric& m,
                                const VectorFieldGenerator& X,
                                const Rational& lambda, const Rational& mu,
                                const DiffOperator2& A) {
  return lie_operator_defn(generator_components(m, X), lambda, mu, A);
}

std::vector<DiffOperator2> inversion_action_formula(const FlatMetric& m,
                                                    const Rational& lambda,
                                                    const Rational& mu,
                                                    const DiffOperator2& A) {
  const int n = m.n();
  Rational delta = mu - lambda;
  Poly sigma = operator_to_symbol(A);
  std::vector<Poly> parts;
  for (int l = 0; l <= 3; ++l) parts.push_back(sigma.xi_homogeneous_part(l));

  std::vector<DiffOperator2> out;
  out.reserve(n);
  for (int r = 0; r < n; ++r) {
    VectorFieldGenerator inv{VectorFieldGenerator::Kind::Inversion, r, 0};
    Poly rho(n);
    for (int l = 0; l <= 2; ++l) {
      rho += lie_symbol(m, inv, delta, parts[l]);
      const Poly& next = parts[l + 1];
      if (!next.is_zero()) {
        rho -= Poly::var_xi(n, r) * op_T(m, next);
        Rational c = Rational(2) * (Rational(l) + Rational(n) * lambda);
        Rational cs = c * m.sign(r);
        rho += ExactScalar(cs) * next.partial_xi(r);
      }
    }
    out.push_back(symbol_to_operator(rho));
  }
  return out;
}

}  // namespace confquant
