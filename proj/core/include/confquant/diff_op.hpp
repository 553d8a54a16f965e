// Linear differential operators acting on densities over R^n.
//
// DensityOp is the general container: a finite sum  sum_a c_a(x) d^a  over
// multi-indices a, with polynomial coefficients; it supports application,
// composition (Leibniz expansion) and the induced Lie derivative
//   L^{lambda,mu}_X (A) = L^mu_X o A - A o L^lambda_X
// for conformal generators X.
//
// DiffOperator2 is the order <= 2 package (A2, A1, A0) used throughout the
// quantization code, with conversions to/from DensityOp and to/from
// polynomial symbols via the normal-ordering identification
//   A2^{ij} xi_i xi_j + A1^i xi_i + A0  <->  A2^{ij} d_i d_j + A1^i d_i + A0.

#pragma once

#include <map>
#include <vector>

#include "confquant/invariant_ops.hpp"
#include "confquant/metric.hpp"
#include "confquant/poly.hpp"

namespace confquant {

class DensityOp {
 public:
  using TermMap = std::map<std::vector<int>, Poly>;

  explicit DensityOp(int n);

  static DensityOp identity(int n);
  static DensityOp multiplication(const Poly& f);  // f x-only

  int n() const { return n_; }
  // Highest |a| with nonzero coefficient; -1 for the zero operator.
  int order() const;
  const TermMap& terms() const { return terms_; }

  // Adds coeff(x) * d^a; coeff must be x-only.
  void add_term(const std::vector<int>& a, const Poly& coeff);
  Poly coeff(const std::vector<int>& a) const;

  Poly apply(const Poly& f) const;  // f x-only
  DensityOp compose(const DensityOp& o) const;  // (*this) o o

  DensityOp operator-() const;
  DensityOp& operator+=(const DensityOp& o);
  DensityOp& operator-=(const DensityOp& o);
  friend DensityOp operator+(DensityOp a, const DensityOp& b) {
    a += b;
    return a;
  }
  friend DensityOp operator-(DensityOp a, const DensityOp& b) {
    a -= b;
    return a;
  }
  friend DensityOp operator*(const ExactScalar& c, DensityOp a);

  friend bool operator==(const DensityOp& a, const DensityOp& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const DensityOp& a, const DensityOp& b) {
    return !(a == b);
  }

 private:
  int n_;
  TermMap terms_;  // multi-index -> x-only coefficient; no zero entries
};

// First-order Lie action on weight-lambda densities as an operator:
//   X^k d_k + lambda Div X.
DensityOp lie_density_op(const FlatMetric& m, const VectorFieldGenerator& X,
                         const Rational& lambda);
DensityOp lie_density_op(const std::vector<Poly>& X, const Rational& lambda);

struct DiffOperator2 {
  int n = 0;
  std::vector<std::vector<Poly>> A2;  // n x n, symmetric, x-only entries
  std::vector<Poly> A1;               // length n, x-only
  Poly A0;

  explicit DiffOperator2(int n);

  bool is_zero() const;
  // Structural checks: shapes, symmetry of A2, x-only coefficients.
  void validate() const;

  Poly apply(const Poly& f) const;  // f x-only

  DiffOperator2 operator-() const;
  DiffOperator2& operator+=(const DiffOperator2& o);
  DiffOperator2& operator-=(const DiffOperator2& o);
  friend DiffOperator2 operator+(DiffOperator2 a, const DiffOperator2& b) {
    a += b;
    return a;
  }
  friend DiffOperator2 operator-(DiffOperator2 a, const DiffOperator2& b) {
    a -= b;
    return a;
  }
  friend DiffOperator2 operator*(const ExactScalar& c, DiffOperator2 a);
  friend bool operator==(const DiffOperator2& a, const DiffOperator2& b);
  friend bool operator!=(const DiffOperator2& a, const DiffOperator2& b) {
    return !(a == b);
  }
};

DensityOp to_density_op(const DiffOperator2& A);
// Requires order <= 2; off-diagonal second-order coefficients are split
// evenly between the two symmetric A2 slots.
DiffOperator2 to_diff_operator2(const DensityOp& A);

// Normal-ordering identification with polynomial symbols of xi-degree <= 2.
Poly operator_to_symbol(const DiffOperator2& A);
DiffOperator2 symbol_to_operator(const Poly& P);

// L^{lambda,mu}_X(A) = L^mu_X o A - A o L^lambda_X for an order <= 2
// operator.  The order-3 part of the composition must cancel exactly (it
// does for every vector field); a surviving third-order coefficient is an
// internal error and throws std::logic_error.
DiffOperator2 lie_operator_defn(const FlatMetric& m,
                                const VectorFieldGenerator& X,
                                const Rational& lambda, const Rational& mu,
                                const DiffOperator2& A);
DiffOperator2 lie_operator_defn(const std::vector<Poly>& X,
                                const Rational& lambda, const Rational& mu,
                                const DiffOperator2& A);

// Component decomposition of a xi-degree <= 2 symbol:
//   P = P2^{ij} xi_i xi_j + P1^i xi_i + P0,  P2 symmetric.
struct SymbolComponents {
  int n = 0;
  std::vector<std::vector<Poly>> P2;
  std::vector<Poly> P1;
  Poly P0;

  explicit SymbolComponents(int n);
};

SymbolComponents split_symbol(const Poly& P);
Poly join_symbol(const SymbolComponents& c);

// Structural blocks of the component-chart quantization ansatz.  Each maps
// a symbol to the order <= 2 operator contributed by one coefficient:
//   identity:  A2 = P2, A1 = P1, A0 = P0
//   alpha:     A0 = d_i P1^i
//   beta1:     A1^i = d_j P2^{ij}
//   beta2:     A1^i = g^{ij} g_{kl} d_j P2^{kl}
//   beta3:     A0 = d_i d_j P2^{ij}
//   beta4:     A0 = g^{ij} g_{kl} d_i d_j P2^{kl}
DiffOperator2 block_identity(const SymbolComponents& c);
DiffOperator2 block_alpha(const SymbolComponents& c);
DiffOperator2 block_beta1(const SymbolComponents& c);
DiffOperator2 block_beta2(const FlatMetric& m, const SymbolComponents& c);
DiffOperator2 block_beta3(const SymbolComponents& c);
DiffOperator2 block_beta4(const FlatMetric& m, const SymbolComponents& c);

// Closed-form Lie action of the n inversion-type generators on an
// order <= 2 operator, computed degreewise on the symbol:
//   rho_l = L^delta(sigma_l) - xi_r T(sigma_{l+1})
//           + 2 (l + n lambda) sign(r) d_{xi_r}(sigma_{l+1}),
// returned for r = 1..n in index order.  Agrees with lie_operator_defn on
// the inversion generators.
std::vector<DiffOperator2> inversion_action_formula(const FlatMetric& m,
                                                    const Rational& lambda,
                                                    const Rational& mu,
                                                    const DiffOperator2& A);

}  // namespace confquant
