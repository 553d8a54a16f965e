// Density weights (lambda, mu) on a flat background of signature (p, q),
// the weight shift delta = mu - lambda, and the resonance classification of
// delta.  For n >= 2 the quantization map exists and is unique exactly when
//
//   delta not in { 2/n, (n+2)/(2n), 1, (n+1)/n, (n+2)/n },
//
// equivalently when none of the denominators
//   1 - delta, 2 + n(1 - delta), 1 + n(1 - delta), 2 + n(1 - 2 delta),
//   2 - n delta
// vanish.  For n = 1 several of the generic building blocks become linearly
// dependent and the effective denominator set is {1 - delta, 2 - delta,
// 3 - 2 delta}, so the resonance set shrinks to {1, 3/2, 2}.  (At n = 1 the
// five-parameter coefficient chart additionally degenerates at delta = 3,
// but the quantization map itself is regular there; see
// generic_coefficients.)

#pragma once

#include <vector>

#include "confquant/metric.hpp"
#include "confquant/rational.hpp"

namespace confquant {

struct Weights {
  FlatMetric metric;
  Rational lambda;
  Rational mu;

  Weights(FlatMetric m, Rational l, Rational u)
      : metric(m), lambda(std::move(l)), mu(std::move(u)) {}

  int n() const { return metric.n(); }
  Rational delta() const { return mu - lambda; }
};

// The resonant values of delta for dimension n, sorted increasingly.
std::vector<Rational> resonant_deltas(int n);

// The denominators whose vanishing marks a resonance.  For n >= 2 these are
// the five generic ones listed above; for n = 1 the three effective ones.
std::vector<Rational> resonance_denominators(int n, const Rational& delta);

bool is_resonant(int n, const Rational& delta);

}  // namespace confquant
