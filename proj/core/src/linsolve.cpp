#include "confquant/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace confquant {

namespace {

void check_rect(const Matrix& A) {
  for (const auto& row : A) {
    if (row.size() != A[0].size()) {
      throw std::invalid_argument("linsolve: ragged matrix");
    }
  }
}

}  // namespace

LinearSolution solve_exact(Matrix A, Vector b) {
  if (A.size() != b.size()) {
    throw std::invalid_argument("solve_exact: row count mismatch");
  }
  LinearSolution out;
  if (A.empty()) {
    out.kind = LinearSolution::Kind::Unique;
    return out;
  }
  check_rect(A);
  const int m = static_cast<int>(A.size());
  const int k = static_cast<int>(A[0].size());

  // Forward elimination with column pivoting records pivot columns.
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < k && row < m; ++col) {
    int piv = -1;
    for (int r = row; r < m; ++r) {
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(A[piv], A[row]);
    std::swap(b[piv], b[row]);
    Rational inv = 1 / A[row][col];
    for (int c = col; c < k; ++c) A[row][c] *= inv;
    b[row] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || A[r][col] == 0) continue;
      Rational f = A[r][col];
      for (int c = col; c < k; ++c) A[r][c] -= f * A[row][c];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  out.rank = row;

  // Inconsistent when a zero row has nonzero right-hand side.
  for (int r = row; r < m; ++r) {
    if (b[r] != 0) {
      out.kind = LinearSolution::Kind::None;
      return out;
    }
  }

  out.particular.assign(k, Rational(0));
  for (int r = 0; r < row; ++r) out.particular[pivot_col[r]] = b[r];

  std::vector<bool> is_pivot(k, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int c = 0; c < k; ++c) {
    if (is_pivot[c]) continue;
    Vector v(k, Rational(0));
    v[c] = 1;
    for (int r = 0; r < row; ++r) v[pivot_col[r]] = -A[r][c];
    out.nullspace.push_back(std::move(v));
  }
  out.kind = out.nullspace.empty() ? LinearSolution::Kind::Unique
                                   : LinearSolution::Kind::Affine;
  return out;
}

int rank_exact(Matrix A) {
  if (A.empty()) return 0;
  Vector b(A.size(), Rational(0));
  return solve_exact(std::move(A), std::move(b)).rank;
}

Matrix invert_exact(const Matrix& A) {
  const int k = static_cast<int>(A.size());
  check_rect(A);
  if (k == 0 || static_cast<int>(A[0].size()) != k) {
    throw std::invalid_argument("invert_exact: matrix must be square");
  }
  // Solve A X = I column by column via one shared elimination.
  Matrix work = A;
  Matrix inv(k, Vector(k, Rational(0)));
  for (int i = 0; i < k; ++i) inv[i][i] = 1;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r) {
      if (work[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw std::domain_error("invert_exact: singular matrix");
    std::swap(work[piv], work[col]);
    std::swap(inv[piv], inv[col]);
    Rational scale = 1 / work[col][col];
    for (int c = 0; c < k; ++c) {
      work[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (int r = 0; r < k; ++r) {
      if (r == col || work[r][col] == 0) continue;
      Rational f = work[r][col];
      for (int c = 0; c < k; ++c) {
        work[r][c] -= f * work[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

UniPoly up_constant(const Rational& c) {
  if (c == 0) return {};
  return {c};
}

UniPoly up_linear(const Rational& c0, const Rational& c1) {
  UniPoly f = {c0, c1};
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

bool up_is_zero(const UniPoly& f) { return f.empty(); }

int up_degree(const UniPoly& f) { return static_cast<int>(f.size()) - 1; }

namespace {

UniPoly up_trim(UniPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

}  // namespace

UniPoly up_add(const UniPoly& a, const UniPoly& b) {
  UniPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return up_trim(std::move(out));
}

UniPoly up_sub(const UniPoly& a, const UniPoly& b) {
  return up_add(a, up_neg(b));
}

UniPoly up_neg(const UniPoly& a) {
  UniPoly out = a;
  for (auto& c : out) c = -c;
  return out;
}

UniPoly up_mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return up_trim(std::move(out));
}

Rational up_eval(const UniPoly& f, const Rational& t) {
  Rational acc(0);
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

namespace {

// All positive divisors of |z| (z != 0), by trial division.
std::vector<mpz_class> divisors(mpz_class z) {
  z = abs(z);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= z; ++d) {
    if (z % d == 0) {
      small.push_back(d);
      if (d * d != z) large.push_back(z / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> up_rational_roots(const UniPoly& f) {
  if (up_is_zero(f)) {
    throw std::invalid_argument("up_rational_roots: zero polynomial");
  }
  // Clear denominators to an integer polynomial.
  mpz_class den_lcm(1);
  for (const auto& c : f) {
    mpz_class d = c.get_den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  std::vector<mpz_class> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Rational scaled = f[i] * Rational(den_lcm);
    g[i] = scaled.get_num();
  }
  // Strip trailing zero coefficients: factor out t^k (root 0).
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < g.size() && g[low] == 0) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low + 1 >= g.size()) return roots;  // constant or pure power of t

  const mpz_class a0 = g[low];
  const mpz_class alead = g.back();
  for (const mpz_class& p : divisors(a0)) {
    for (const mpz_class& q : divisors(alead)) {
      for (int s : {1, -1}) {
        Rational cand(s * p, q);
        cand.canonicalize();
        if (up_eval(f, cand) == 0) {
          if (std::find(roots.begin(), roots.end(), cand) == roots.end()) {
            roots.push_back(cand);
          }
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

UniPoly up_det(const std::vector<std::vector<UniPoly>>& M) {
  const std::size_t k = M.size();
  for (const auto& row : M) {
    if (row.size() != k) throw std::invalid_argument("up_det: not square");
  }
  if (k == 0) return up_constant(Rational(1));
  if (k == 1) return M[0][0];
  UniPoly det;
  for (std::size_t j = 0; j < k; ++j) {
    if (up_is_zero(M[0][j])) continue;
    std::vector<std::vector<UniPoly>> sub;
    sub.reserve(k - 1);
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<UniPoly> row;
      row.reserve(k - 1);
      for (std::size_t c = 0; c < k; ++c) {
        if (c != j) row.push_back(M[r][c]);
      }
      sub.push_back(std::move(row));
    }
    UniPoly term = up_mul(M[0][j], up_det(sub));
    det = (j % 2 == 0) ? up_add(det, term) : up_sub(det, term);
  }
  return det;
}

}  // namespace confquant
