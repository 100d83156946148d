#pragma once

#include <random>

#include <gtest/gtest.h>

#include "holo/manifold.hpp"
#include "holo/matrix.hpp"

namespace holo::test {

inline GrassmannianPoint random_point(std::mt19937_64& rng, double lo = 0.0,
                                      double hi = 6.283185307179586) {
  std::uniform_real_distribution<double> d(lo, hi);
  GrassmannianPoint p;
  for (auto& x : p.coords) x = d(rng);
  return p;
}

inline GrassmannianPoint generic_point() {
  return {{0.7, 0.4, 1.1, 0.3, 0.2, 1.3, 2.1, 0.5}};
}

template <int N>
::testing::AssertionResult near(const CMat<N>& a, const CMat<N>& b, double tol) {
  const double d = max_abs_difference<N>(a, b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max |a - b| = " << d << " > " << tol << "\n"
                                       << a << "\nvs\n"
                                       << b;
}

inline CMat2 mat2(Complex a, Complex b, Complex c, Complex d) {
  CMat2 m;
  m << a, b, c, d;
  return m;
}

}  // namespace holo::test
