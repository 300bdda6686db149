#pragma once

// Central finite differences with two levels of Richardson extrapolation.
//
// D(s) = (f(x + s v) - f(x - s v)) / 2s is evaluated at s = 2h, h, h/2. The
// first extrapolation removes the O(s^2) term, the second the O(s^4) term.
// The error estimate attached to each derivative is the distance between the
// final value and the once-extrapolated value at the finest step, which bounds
// the error of the returned value from above.

#include <algorithm>
#include <utility>

#include "kslab/types.hpp"

namespace kslab::fd {

namespace detail {
inline thread_local double g_max_error = 0.0;
}  // namespace detail

/// RAII scope collecting the largest finite-difference error estimate
/// produced while it is alive. Scopes nest; an inner scope's maximum is
/// propagated to the enclosing one on destruction.
class ErrorScope {
 public:
  ErrorScope() : saved_(std::exchange(detail::g_max_error, 0.0)) {}
  ~ErrorScope() { detail::g_max_error = std::max(saved_, detail::g_max_error); }
  ErrorScope(const ErrorScope&) = delete;
  ErrorScope& operator=(const ErrorScope&) = delete;

  double max_error() const { return detail::g_max_error; }

 private:
  double saved_;
};

inline void record_error(double estimate) {
  detail::g_max_error = std::max(detail::g_max_error, estimate);
}

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(Complex v) { return std::abs(v); }
template <class Derived>
double norm_of(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m);
}

/// Derivative of `f` at `x` along direction `v` (not normalized), i.e.
/// d/ds f(x + s v) at s = 0. `step` is the base step h in parameter s.
template <class F>
auto directional(F&& f, const Point& x, const RealVector& v, double step) {
  auto central = [&](double s) {
    const Point xp = x + s * v;
    const Point xm = x - s * v;
    auto fp = f(xp);
    auto fm = f(xm);
    return decltype(fp)((fp - fm) / (2.0 * s));
  };
  auto d_coarse = central(2.0 * step);
  auto d_mid = central(step);
  auto d_fine = central(0.5 * step);
  using Value = decltype(d_mid);
  const Value r_coarse = (4.0 * d_mid - d_coarse) / 3.0;
  const Value r_fine = (4.0 * d_fine - d_mid) / 3.0;
  Value result = (16.0 * r_fine - r_coarse) / 15.0;
  const Value delta = result - r_fine;
  record_error(norm_of(delta));
  return result;
}

/// Partial derivative along coordinate axis `axis`.
template <class F>
auto partial(F&& f, const Point& x, int axis, double step) {
  RealVector v = RealVector::Zero(x.size());
  v(axis) = 1.0;
  return directional(std::forward<F>(f), x, v, step);
}

}  // namespace kslab::fd
