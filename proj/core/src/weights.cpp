#include "confquant/weights.hpp"

#include <algorithm>

namespace confquant {

std::vector<Rational> resonance_denominators(int n, const Rational& delta) {
  if (n < 1) throw std::invalid_argument("resonance_denominators: n < 1");
  if (n == 1) {
    // Effective one-dimensional denominators.
    return {Rational(1) - delta, Rational(2) - delta,
            Rational(3) - 2 * delta};
  }
  Rational nn(n);
  return {Rational(1) - delta, Rational(2) + nn * (1 - delta),
          Rational(1) + nn * (1 - delta), Rational(2) + nn * (1 - 2 * delta),
          Rational(2) - nn * delta};
}

std::vector<Rational> resonant_deltas(int n) {
  if (n < 1) throw std::invalid_argument("resonant_deltas: n < 1");
  std::vector<Rational> out;
  if (n == 1) {
    out = {Rational(1), make_rational(3, 2), Rational(2)};
  } else {
    out = {make_rational(2, n),     make_rational(n + 2, 2 * n), Rational(1),
           make_rational(n + 1, n), make_rational(n + 2, n)};
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_resonant(int n, const Rational& delta) {
  for (const Rational& d : resonance_denominators(n, delta)) {
    if (d == 0) return true;
  }
  return false;
}

}  // namespace confquant
