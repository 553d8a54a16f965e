#include "confquant/invariant_ops.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

#include "confquant/errors.hpp"

namespace confquant {

std::vector<VectorFieldGenerator> conformal_generators(int n) {
  std::vector<VectorFieldGenerator> out = euclidean_generators(n);
  out.push_back({VectorFieldGenerator::Kind::Dilation, 0, 0});
  for (int i = 0; i < n; ++i) {
    out.push_back({VectorFieldGenerator::Kind::Inversion, i, 0});
  }
  return out;
}

std::vector<VectorFieldGenerator> euclidean_generators(int n) {
  std::vector<VectorFieldGenerator> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({VectorFieldGenerator::Kind::Translation, i, 0});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.push_back({VectorFieldGenerator::Kind::Rotation, i, j});
    }
  }
  return out;
}

std::string generator_id(const VectorFieldGenerator& X) {
  using Kind = VectorFieldGenerator::Kind;
  switch (X.kind) {
    case Kind::Translation:
      return "translation:" + std::to_string(X.i + 1);
    case Kind::Rotation:
      return "rotation:" + std::to_string(X.i + 1) + ":" +
             std::to_string(X.j + 1);
    case Kind::Dilation:
      return "dilation";
    case Kind::Inversion:
      return "inversion:" + std::to_string(X.i + 1);
  }
  throw std::logic_error("generator_id: unreachable");
}

namespace {

int parse_index(const std::string& tok, int n, const std::string& id) {
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("parse_generator: bad index in '" + id + "'");
    }
  }
  if (tok.empty()) throw ParseError("parse_generator: bad index in '" + id + "'");
  int v = std::stoi(tok);
  if (v < 1 || v > n) {
    throw ParseError("parse_generator: index out of range in '" + id + "'");
  }
  return v - 1;
}

}  // namespace

VectorFieldGenerator parse_generator(const std::string& id, int n) {
  using Kind = VectorFieldGenerator::Kind;
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t colon = id.find(':', pos);
    if (colon == std::string::npos) {
      parts.push_back(id.substr(pos));
      break;
    }
    parts.push_back(id.substr(pos, colon - pos));
    pos = colon + 1;
  }
  if (parts[0] == "translation" && parts.size() == 2) {
    return {Kind::Translation, parse_index(parts[1], n, id), 0};
  }
  if (parts[0] == "rotation" && parts.size() == 3) {
    int i = parse_index(parts[1], n, id);
    int j = parse_index(parts[2], n, id);
    if (i >= j) throw ParseError("parse_generator: rotation needs i < j");
    return {Kind::Rotation, i, j};
  }
  if (parts[0] == "dilation" && parts.size() == 1) {
    return {Kind::Dilation, 0, 0};
  }
  if (parts[0] == "inversion" && parts.size() == 2) {
    return {Kind::Inversion, parse_index(parts[1], n, id), 0};
  }
  throw ParseError("parse_generator: unknown generator id '" + id + "'");
}

std::vector<Poly> generator_components(const FlatMetric& m,
                                       const VectorFieldGenerator& X) {
  using Kind = VectorFieldGenerator::Kind;
  const int n = m.n();
  std::vector<Poly> comp(n, Poly(n));
  switch (X.kind) {
    case Kind::Translation:
      comp[X.i] = Poly::constant(n, ExactScalar(1));
      break;
    case Kind::Rotation: {
      // x_i d_j - x_j d_i with x_i = sign(i) x^i.
      comp[X.j] = ExactScalar(m.sign(X.i)) * Poly::var_x(n, X.i);
      comp[X.i] = ExactScalar(-m.sign(X.j)) * Poly::var_x(n, X.j);
      break;
    }
    case Kind::Dilation:
      for (int k = 0; k < n; ++k) comp[k] = Poly::var_x(n, k);
      break;
    case Kind::Inversion: {
      // (x_j x^j) d_i - 2 x_i x^k d_k.
      Poly norm(n);
      for (int j = 0; j < n; ++j) {
        norm += ExactScalar(m.sign(j)) * (Poly::var_x(n, j) * Poly::var_x(n, j));
      }
      comp[X.i] = norm;
      Poly xi_low = ExactScalar(m.sign(X.i)) * Poly::var_x(n, X.i);
      for (int k = 0; k < n; ++k) {
        comp[k] -= ExactScalar(2) * (xi_low * Poly::var_x(n, k));
      }
      break;
    }
  }
  return comp;
}

Poly generator_divergence(const FlatMetric& m, const VectorFieldGenerator& X) {
  const int n = m.n();
  std::vector<Poly> comp = generator_components(m, X);
  Poly div(n);
  for (int k = 0; k < n; ++k) div += comp[k].partial_x(k);
  return div;
}

Poly field_divergence(const std::vector<Poly>& X) {
  if (X.empty()) throw std::invalid_argument("field_divergence: empty field");
  const int n = X.front().n();
  if (static_cast<int>(X.size()) != n) {
    throw std::invalid_argument("field_divergence: need n components");
  }
  Poly out(n);
  for (int k = 0; k < n; ++k) {
    if (!X[k].is_x_only()) {
      throw std::invalid_argument("field_divergence: components must be "
                                  "x-only");
    }
    out += X[k].partial_x(k);
  }
  return out;
}

Poly lie_density(const std::vector<Poly>& X, const Rational& lambda,
                 const Poly& f) {
  if (!f.is_x_only()) {
    throw std::invalid_argument("lie_density: density must not depend on xi");
  }
  const Poly div = field_divergence(X);
  const int n = f.n();
  Poly out(n);
  for (int k = 0; k < n; ++k) out += X[k] * f.partial_x(k);
  out += ExactScalar(lambda) * (div * f);
  return out;
}

Poly lie_density(const FlatMetric& m, const VectorFieldGenerator& X,
                 const Rational& lambda, const Poly& f) {
  return lie_density(generator_components(m, X), lambda, f);
}

Poly lie_symbol(const std::vector<Poly>& X, const Rational& delta,
                const Poly& P) {
  const Poly div = field_divergence(X);
  const int n = P.n();
  if (static_cast<int>(X.size()) != n) {
    throw std::invalid_argument("lie_symbol: dimension mismatch");
  }
  Poly out(n);
  for (int k = 0; k < n; ++k) out += X[k] * P.partial_x(k);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      Poly dX = X[j].partial_x(k);
      if (dX.is_zero()) continue;
      out -= dX * (Poly::var_xi(n, j) * P.partial_xi(k));
    }
  }
  out += ExactScalar(delta) * (div * P);
  return out;
}

Poly lie_symbol(const FlatMetric& m, const VectorFieldGenerator& X,
                const Rational& delta, const Poly& P) {
  return lie_symbol(generator_components(m, X), delta, P);
}

std::string invariant_op_name(InvariantOp op) {
  switch (op) {
    case InvariantOp::R: return "R";
    case InvariantOp::E: return "E";
    case InvariantOp::Euler: return "Euler";
    case InvariantOp::T: return "T";
    case InvariantOp::G: return "G";
    case InvariantOp::D: return "D";
    case InvariantOp::L: return "L";
    case InvariantOp::R0: return "R0";
    case InvariantOp::G0: return "G0";
    case InvariantOp::L0: return "L0";
    case InvariantOp::Casimir: return "Casimir";
    case InvariantOp::Z: return "Z";
  }
  throw std::logic_error("invariant_op_name: unreachable");
}

InvariantOp parse_invariant_op(const std::string& name) {
  static const std::vector<InvariantOp> all = {
      InvariantOp::R,  InvariantOp::E,  InvariantOp::Euler, InvariantOp::T,
      InvariantOp::G,  InvariantOp::D,  InvariantOp::L,     InvariantOp::R0,
      InvariantOp::G0, InvariantOp::L0, InvariantOp::Casimir, InvariantOp::Z};
  for (InvariantOp op : all) {
    if (invariant_op_name(op) == name) return op;
  }
  throw ParseError("parse_invariant_op: unknown operator '" + name + "'");
}

Poly apply_invariant(InvariantOp op, const FlatMetric& m, const Poly& P) {
  switch (op) {
    case InvariantOp::R: return op_R(m, P);
    case InvariantOp::E: return op_E(m, P);
    case InvariantOp::Euler: return op_euler(P);
    case InvariantOp::T: return op_T(m, P);
    case InvariantOp::G: return op_G(m, P);
    case InvariantOp::D: return op_D(P);
    case InvariantOp::L: return op_L(m, P);
    case InvariantOp::R0: return op_R0(m, P);
    case InvariantOp::G0: return op_G0(m, P);
    case InvariantOp::L0: return op_L0(m, P);
    case InvariantOp::Casimir: return op_casimir(m, P);
    case InvariantOp::Z: return op_Z(m, P);
  }
  throw std::logic_error("apply_invariant: unreachable");
}

Poly op_R(const FlatMetric& m, const Poly& P) {
  const int n = m.n();
  Poly quad(n);
  for (int i = 0; i < n; ++i) {
    quad += ExactScalar(m.sign(i)) * (Poly::var_xi(n, i) * Poly::var_xi(n, i));
  }
  return quad * P;
}

Poly op_euler(const Poly& P) {
  const int n = P.n();
  Poly out(n);
  for (int i = 0; i < n; ++i) out += Poly::var_xi(n, i) * P.partial_xi(i);
  return out;
}

Poly op_E(const FlatMetric& m, const Poly& P) {
  return op_euler(P) + ExactScalar(make_rational(m.n(), 2)) * P;
}

Poly op_T(const FlatMetric& m, const Poly& P) {
  const int n = m.n();
  Poly out(n);
  for (int i = 0; i < n; ++i) {
    out += ExactScalar(m.sign(i)) * P.partial_xi(i).partial_xi(i);
  }
  return out;
}

Poly op_G(const FlatMetric& m, const Poly& P) {
  const int n = m.n();
  Poly out(n);
  for (int i = 0; i < n; ++i) {
    out += ExactScalar(m.sign(i)) * (Poly::var_xi(n, i) * P.partial_x(i));
  }
  return out;
}

Poly op_D(const Poly& P) {
  const int n = P.n();
  Poly out(n);
  for (int i = 0; i < n; ++i) out += P.partial_x(i).partial_xi(i);
  return out;
}

Poly op_L(const FlatMetric& m, const Poly& P) {
  const int n = m.n();
  Poly out(n);
  for (int i = 0; i < n; ++i) {
    out += ExactScalar(m.sign(i)) * P.partial_x(i).partial_x(i);
  }
  return out;
}

Poly op_R0(const FlatMetric& m, const Poly& P) { return op_R(m, op_T(m, P)); }
Poly op_G0(const FlatMetric& m, const Poly& P) { return op_G(m, op_T(m, P)); }
Poly op_L0(const FlatMetric& m, const Poly& P) { return op_L(m, op_T(m, P)); }

Poly op_casimir(const FlatMetric& m, const Poly& P) {
  Poly e2 = op_E(m, op_E(m, P));
  Poly rt = op_R(m, op_T(m, P));
  Poly tr = op_T(m, op_R(m, P));
  return e2 - ExactScalar(make_rational(1, 2)) * (rt + tr);
}

Poly op_Z(const FlatMetric& m, const Poly& P) {
  auto C = [&](const Poly& a) { return op_casimir(m, a); };
  auto G = [&](const Poly& a) { return op_G(m, a); };
  auto D = [&](const Poly& a) { return op_D(a); };
  auto GC = [&](const Poly& a) { return G(C(a)) - C(G(a)); };  // [G, Casimir]
  auto DC = [&](const Poly& a) { return D(C(a)) - C(D(a)); };  // [D, Casimir]

  Poly lp = op_L(m, P);
  Poly head = C(lp) + ExactScalar(make_rational(3, 2)) * lp;
  Poly tail = D(GC(P)) + GC(D(P)) - G(DC(P)) - DC(G(P));
  return head + ExactScalar(make_rational(1, 4)) * tail;
}

Poly contracted_inversion_action(const FlatMetric& m, const Rational& delta,
                                 const Poly& P) {
  const int n = m.n();
  if (P.n() != n) {
    throw std::invalid_argument("contracted_inversion_action: dimension");
  }
  Poly out(n);
  for (int r = 0; r < n; ++r) {
    VectorFieldGenerator X;
    X.kind = VectorFieldGenerator::Kind::Inversion;
    X.i = r;
    const Poly term = lie_symbol(m, X, delta, P);
    if (term.is_zero()) continue;
    // Contract with the index-raised momentum xi^r = sign(r) xi_r.
    out += ExactScalar(Rational(m.sign(r))) * (Poly::var_xi(n, r) * term);
  }
  return out;
}

std::vector<std::string> commutation_relation_ids() {
  return {"R0_inv", "E_inv", "G0_inv", "D_inv", "L0_inv", "D2_inv"};
}

Poly commutation_residual(const std::string& relation_id, const FlatMetric& m,
                          const Rational& delta, const Poly& P) {
  const int n = m.n();
  if (P.n() != n) {
    throw std::invalid_argument("commutation_residual: dimension");
  }
  // The momentum slot of the contracted action stays outside the bracket:
  // [A, L](P) = sum_r sign(r) xi_r (A(L_r P) - L_r(A P)).
  auto bracket = [&](const std::function<Poly(const Poly&)>& op) {
    const Poly ap = op(P);
    Poly out(n);
    for (int r = 0; r < n; ++r) {
      VectorFieldGenerator X;
      X.kind = VectorFieldGenerator::Kind::Inversion;
      X.i = r;
      const Poly term =
          op(lie_symbol(m, X, delta, P)) - lie_symbol(m, X, delta, ap);
      if (term.is_zero()) continue;
      out += ExactScalar(Rational(m.sign(r))) * (Poly::var_xi(n, r) * term);
    }
    return out;
  };
  auto scaled = [](long c, const Poly& q) {
    return ExactScalar(Rational(c)) * q;
  };

  if (relation_id == "R0_inv") {
    return bracket([&](const Poly& q) { return op_R0(m, q); });
  }
  if (relation_id == "E_inv") {
    return bracket([](const Poly& q) { return op_euler(q); });
  }
  if (relation_id == "G0_inv") {
    const Poly lhs = bracket([&](const Poly& q) { return op_G0(m, q); });
    const Poly rhs = scaled(2, op_R0(m, op_euler(P))) -
                     ExactScalar(Rational(2 * n * delta)) * op_R0(m, P);
    return lhs - rhs;
  }
  if (relation_id == "D_inv") {
    const Poly lhs = bracket([](const Poly& q) { return op_D(q); });
    const Poly rhs = scaled(-2, op_R0(m, P)) +
                     scaled(4, op_euler(op_euler(P))) -
                     ExactScalar(Rational(2 * (n * (delta - 1) + 2))) *
                         op_euler(P);
    return lhs - rhs;
  }
  if (relation_id == "L0_inv") {
    const Poly lhs = bracket([&](const Poly& q) { return op_L0(m, q); });
    const Poly rhs = scaled(-4, op_R0(m, op_D(P))) +
                     scaled(8, op_euler(op_G0(m, P))) +
                     ExactScalar(Rational(2 * (n * (1 - 2 * delta) - 2))) *
                         op_G0(m, P);
    return lhs - rhs;
  }
  if (relation_id == "D2_inv") {
    const Poly lhs = bracket([](const Poly& q) { return op_D(op_D(q)); });
    const Poly dp = op_D(P);
    const Poly rhs = scaled(-4, op_R0(m, dp)) - scaled(2, op_G0(m, P)) +
                     scaled(8, op_euler(op_euler(dp))) +
                     ExactScalar(Rational(4 * (n * (1 - delta) - 1))) *
                         op_euler(dp);
    return lhs - rhs;
  }
  throw std::invalid_argument("commutation_residual: unknown relation '" +
                              relation_id + "'");
}

}  // namespace confquant
