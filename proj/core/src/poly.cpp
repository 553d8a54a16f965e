#include "confquant/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace confquant {

namespace {

int vec_sum(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0);
}

void check_exponents(int n, const Monomial& m) {
  if (static_cast<int>(m.x.size()) != n ||
      static_cast<int>(m.xi.size()) != n) {
    throw std::invalid_argument("Poly: exponent vector length != n");
  }
  for (int e : m.x) {
    if (e < 0) throw std::invalid_argument("Poly: negative x exponent");
  }
  for (int e : m.xi) {
    if (e < 0) throw std::invalid_argument("Poly: negative xi exponent");
  }
}

}  // namespace

int Monomial::degree() const { return vec_sum(x) + vec_sum(xi); }
int Monomial::x_degree() const { return vec_sum(x); }
int Monomial::xi_degree() const { return vec_sum(xi); }

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  if (a.x != b.x) return a.x < b.x;
  return a.xi < b.xi;
}

Poly::Poly(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Poly: dimension must be >= 1");
}

Poly Poly::constant(int n, const ExactScalar& c) {
  Poly p(n);
  Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  p.add_term(m, c);
  return p;
}

Poly Poly::var_x(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("Poly::var_x: bad index");
  Poly p(n);
  Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  m.x[i] = 1;
  p.add_term(m, ExactScalar(1));
  return p;
}

Poly Poly::var_xi(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("Poly::var_xi: bad index");
  Poly p(n);
  Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  m.xi[i] = 1;
  p.add_term(m, ExactScalar(1));
  return p;
}

bool Poly::is_x_only() const {
  for (const auto& [m, c] : terms_) {
    if (m.xi_degree() != 0) return false;
  }
  return true;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Poly::x_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.x_degree());
  return d;
}

int Poly::xi_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.xi_degree());
  return d;
}

void Poly::add_term(const Monomial& m, const ExactScalar& c) {
  check_exponents(n_, m);
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactScalar Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ExactScalar(0) : it->second;
}

Poly Poly::operator-() const {
  Poly out(n_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

void Poly::check_same_space(const Poly& o) const {
  if (n_ != o.n_) {
    throw std::invalid_argument("Poly: dimension mismatch between operands");
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_space(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_space(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same_space(b);
  Poly out(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (int k = 0; k < a.n_; ++k) {
        m.x[k] += mb.x[k];
        m.xi[k] += mb.xi[k];
      }
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly operator*(const ExactScalar& c, Poly p) {
  if (c.is_zero()) return Poly(p.n());
  Poly out(p.n());
  for (const auto& [m, pc] : p.terms_) out.terms_.emplace(m, c * pc);
  return out;
}

Poly Poly::partial_x(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("partial_x: bad index");
  Poly out(n_);
  for (const auto& [m, c] : terms_) {
    if (m.x[i] == 0) continue;
    Monomial d = m;
    d.x[i] -= 1;
    out.add_term(d, ExactScalar(static_cast<long>(m.x[i])) * c);
  }
  return out;
}

Poly Poly::partial_xi(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("partial_xi: bad index");
  Poly out(n_);
  for (const auto& [m, c] : terms_) {
    if (m.xi[i] == 0) continue;
    Monomial d = m;
    d.xi[i] -= 1;
    out.add_term(d, ExactScalar(static_cast<long>(m.xi[i])) * c);
  }
  return out;
}

Poly Poly::conj() const {
  Poly out(n_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.conj());
  return out;
}

Poly Poly::xi_homogeneous_part(int d) const {
  Poly out(n_);
  for (const auto& [m, c] : terms_) {
    if (m.xi_degree() == d) out.terms_.emplace(m, c);
  }
  return out;
}

ExactScalar Poly::eval(const std::vector<Rational>& xs,
                       const std::vector<Rational>& xis) const {
  if (static_cast<int>(xs.size()) != n_ ||
      static_cast<int>(xis.size()) != n_) {
    throw std::invalid_argument("Poly::eval: point dimension mismatch");
  }
  ExactScalar acc(0);
  for (const auto& [m, c] : terms_) {
    Rational v(1);
    for (int k = 0; k < n_; ++k) {
      for (int e = 0; e < m.x[k]; ++e) v *= xs[k];
      for (int e = 0; e < m.xi[k]; ++e) v *= xis[k];
    }
    acc += c * ExactScalar(v);
  }
  return acc;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (int k = 0; k < n_; ++k) {
      if (m.x[k] > 0) {
        mono += (mono.empty() ? "" : "*") + std::string("x") +
                std::to_string(k + 1);
        if (m.x[k] > 1) mono += "^" + std::to_string(m.x[k]);
      }
    }
    for (int k = 0; k < n_; ++k) {
      if (m.xi[k] > 0) {
        mono += (mono.empty() ? "" : "*") + std::string("xi") +
                std::to_string(k + 1);
        if (m.xi[k] > 1) mono += "^" + std::to_string(m.xi[k]);
      }
    }
    std::string cs = c.str();
    std::string term;
    if (mono.empty()) {
      term = cs;
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      term = "-" + mono;
    } else {
      // Parenthesize mixed complex coefficients for readability.
      const bool mixed = c.re() != 0 && c.im() != 0;
      term = (mixed ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace confquant
