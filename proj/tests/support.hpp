#pragma once

#include <random>

#include "lcfn/lcfn.hpp"

namespace lcfn::test {

inline GeneratorPtr tri(double l, double m, double r) { return share(Generator::triangular(l, m, r)); }

/// Triangular generator with peak in [-2, 2] and spreads that differ by at
/// least 0.1, so it is asymmetric.
inline GeneratorPtr random_generator(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> peak(-2.0, 2.0);
  std::uniform_real_distribution<double> spread(0.1, 3.0);
  const double m = peak(rng);
  double s1 = spread(rng);
  double s2 = spread(rng);
  while (std::abs(s1 - s2) < 0.1) s2 = spread(rng);
  return tri(m - s1, m, m + s2);
}

inline LcfnD random_element(std::mt19937_64& rng, const GeneratorPtr& g, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double r = u(rng);
  return LcfnD(r, u(rng), g);
}

}  // namespace lcfn::test
