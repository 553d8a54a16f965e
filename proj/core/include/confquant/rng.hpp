#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "confquant/poly.hpp"
#include "confquant/rational.hpp"

namespace confquant {

// Deterministic pseudo-random source for randomized exact checks.  All
// randomized suites take an explicit seed so failures replay exactly.
inline constexpr std::uint64_t kDefaultSeed = 20260814ull;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

  long int_in(long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(eng_);
  }

  Rational rational(long max_num = 9, long max_den = 4) {
    return make_rational(int_in(-max_num, max_num), int_in(1, max_den));
  }

  Rational nonzero_rational(long max_num = 9, long max_den = 4) {
    for (;;) {
      Rational r = rational(max_num, max_den);
      if (r != 0) return r;
    }
  }

  ExactScalar scalar(bool complex_part = false) {
    Rational re = rational();
    Rational im = complex_part ? rational() : Rational(0);
    return ExactScalar(re, im);
  }

  std::vector<int> exponents(int n, int total_max) {
    std::vector<int> e(n, 0);
    int budget = static_cast<int>(int_in(0, total_max));
    for (int t = 0; t < budget; ++t) {
      e[int_in(0, n - 1)] += 1;
    }
    return e;
  }

  // Random polynomial in n variables with x-degree <= x_deg, xi-degree
  // <= xi_deg and up to `terms` monomials (possibly fewer after merges).
  Poly poly(int n, int x_deg, int xi_deg, int terms,
            bool complex_coeffs = false) {
    Poly p(n);
    for (int t = 0; t < terms; ++t) {
      Monomial m{exponents(n, x_deg), exponents(n, xi_deg)};
      p.add_term(m, scalar(complex_coeffs));
    }
    return p;
  }

  // Random symbol of a second-order operator: xi-degree exactly <= 2.
  Poly symbol2(int n, int x_deg, int terms) {
    return poly(n, x_deg, 2, terms, /*complex_coeffs=*/false);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace confquant
