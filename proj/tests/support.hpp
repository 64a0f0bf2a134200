// Random inputs shared by the property tests.
#pragma once

#include <random>

#include "mixmaster/kasner.hpp"
#include "mixmaster/surd.hpp"

namespace testing {

using mixmaster::surd::QuadraticSurd;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Quadratic irrational > 1 from a random eventually periodic continued fraction.
inline QuadraticSurd random_irrational() {
  mixmaster::surd::PeriodicCF cf;
  int prefix = uniform(0, 2);
  for (int i = 0; i < prefix; ++i) cf.prefix.push_back(uniform(1, 6));
  int period = uniform(1, 3);
  for (int i = 0; i < period; ++i) cf.period.push_back(uniform(1, 7));
  return mixmaster::surd::cf_to_surd(cf);
}

/// Rational p/q > 1 that is not an integer.
inline QuadraticSurd random_rational() {
  long q = uniform(2, 9);
  long p = q * uniform(1, 5) + uniform(1, static_cast<int>(q) - 1);
  return QuadraticSurd::rational(p, q);
}

inline QuadraticSurd random_u() { return uniform(0, 3) == 0 ? random_rational() : random_irrational(); }

inline mixmaster::kasner::Sector random_sector() { return mixmaster::kasner::Sector::from_index(uniform(1, 6)); }

}  // namespace testing
