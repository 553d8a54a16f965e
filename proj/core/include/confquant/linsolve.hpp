// Exact linear algebra over the rationals: Gaussian elimination with full
// solution-set reporting (no solution / unique / affine family), matrix
// rank and inverse, plus small univariate polynomial helpers over Q used by
// the parametric (lambda-free) solvability analysis: arithmetic, evaluation
// and complete rational root extraction.

#pragma once

#include <vector>

#include "confquant/rational.hpp"

namespace confquant {

using Matrix = std::vector<std::vector<Rational>>;
using Vector = std::vector<Rational>;

struct LinearSolution {
  enum class Kind { None, Unique, Affine };
  Kind kind = Kind::None;
  int rank = 0;
  Vector particular;                  // one solution (empty when Kind::None)
  std::vector<Vector> nullspace;      // basis of the homogeneous solutions
};

// Solves A x = b exactly.  A is m x k (rows of equal length), b has length
// m.  The full affine solution set is reported.
LinearSolution solve_exact(Matrix A, Vector b);

int rank_exact(Matrix A);

// Inverse of a square matrix; throws std::domain_error when singular.
Matrix invert_exact(const Matrix& A);

// --- univariate polynomials over Q, low-degree coefficient first ---

using UniPoly = std::vector<Rational>;

UniPoly up_constant(const Rational& c);
UniPoly up_linear(const Rational& c0, const Rational& c1);  // c0 + c1 t
bool up_is_zero(const UniPoly& f);
int up_degree(const UniPoly& f);  // -1 for zero
UniPoly up_add(const UniPoly& a, const UniPoly& b);
UniPoly up_sub(const UniPoly& a, const UniPoly& b);
UniPoly up_mul(const UniPoly& a, const UniPoly& b);
UniPoly up_neg(const UniPoly& a);
Rational up_eval(const UniPoly& f, const Rational& t);

// All rational roots of f (f must be nonzero), each listed once.
std::vector<Rational> up_rational_roots(const UniPoly& f);

// Determinant of a square matrix with UniPoly entries (Laplace expansion;
// intended for small matrices).
UniPoly up_det(const std::vector<std::vector<UniPoly>>& M);

}  // namespace confquant
