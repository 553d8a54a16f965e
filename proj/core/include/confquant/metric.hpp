// Flat diagonal pseudo-Euclidean metric of signature (p, q):
// g = diag(+1 x p, -1 x q) on R^n, n = p + q.  Indices are 0-based; the
// first p directions carry +1 and the remaining q carry -1.  Raising or
// lowering an index in this metric only flips signs, which sign(i)
// captures.

#pragma once

#include <stdexcept>

namespace confquant {

struct FlatMetric {
  int p = 0;
  int q = 0;

  FlatMetric(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0 || p + q < 1) {
      throw std::invalid_argument("FlatMetric: need p, q >= 0 and p+q >= 1");
    }
  }

  int n() const { return p + q; }

  // g_ii = g^ii for the diagonal metric; +1 for i < p, -1 otherwise.
  int sign(int i) const {
    if (i < 0 || i >= n()) {
      throw std::invalid_argument("FlatMetric::sign: index out of range");
    }
    return i < p ? 1 : -1;
  }

  friend bool operator==(const FlatMetric& a, const FlatMetric& b) {
    return a.p == b.p && a.q == b.q;
  }
};

}  // namespace confquant
