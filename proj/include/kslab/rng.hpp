#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "kslab/types.hpp"

namespace kslab {

/// SplitMix64, a 64-bit counter-based generator.
///
///   state <- state + 0x9E3779B97F4A7C15
///   z <- state
///   z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z <- (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output z ^ (z >> 31)
///
/// uniform() maps the top 53 bits to [0, 1); normal() uses the Box–Muller
/// cosine branch with u1 = 1 - uniform(), u2 = uniform() drawn in that order.
/// Ensembles are always drawn row-major (components of a vector in index
/// order, matrices by rows, upper triangle only for symmetric matrices).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  RealVector uniform_vector(int n, double lo, double hi) {
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  RealVector normal_vector(int n) {
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  /// Real and imaginary parts interleaved per component.
  ComplexVector complex_normal_vector(int n) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) {
      const double re = normal();
      const double im = normal();
      v(i) = Complex(re, im);
    }
    return v;
  }

  RealMatrix symmetric_matrix(int n) {
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = normal();
    return m;
  }

 private:
  std::uint64_t state_;
};

}  // namespace kslab
