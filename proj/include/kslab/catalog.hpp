#pragma once

// Closed-form metric families used throughout the test matrix.

#include <cmath>
#include <string>

#include "kslab/geometry.hpp"

namespace kslab::catalog {

inline RealVector filled(int n, double v) { return RealVector::Constant(n, v); }

inline ChartPatch flat(int dim) {
  ChartPatch c;
  c.dim = dim;
  c.lo = filled(dim, -1.0);
  c.hi = filled(dim, 1.0);
  c.metric = [dim](const Point&) { return RealMatrix(RealMatrix::Identity(dim, dim)); };
  c.label = "flat(" + std::to_string(dim) + ")";
  return c;
}

/// Stereographic chart of the round sphere of the given radius (κ = 1/r²);
/// the projection pole sits at infinity, outside the box.
inline ChartPatch round_sphere(int dim, double radius) {
  if (dim < 2 || radius <= 0.0) throw PreconditionError("catalog: bad round_sphere parameters");
  ChartPatch c;
  c.dim = dim;
  c.lo = filled(dim, -1.0);
  c.hi = filled(dim, 1.0);
  c.metric = [dim, radius](const Point& x) {
    const double conf = 2.0 * radius / (1.0 + x.squaredNorm());
    return RealMatrix(conf * conf * RealMatrix::Identity(dim, dim));
  };
  c.label = "round_sphere(" + std::to_string(dim) + ")";
  return c;
}

/// Poincaré ball of curvature −1/r².
inline ChartPatch hyperbolic_ball(int dim, double radius) {
  if (dim < 2 || radius <= 0.0) throw PreconditionError("catalog: bad hyperbolic_ball parameters");
  ChartPatch c;
  c.dim = dim;
  c.lo = filled(dim, -0.5);
  c.hi = filled(dim, 0.5);
  c.metric = [dim, radius](const Point& x) {
    const double conf = 2.0 * radius / (1.0 - x.squaredNorm());
    return RealMatrix(conf * conf * RealMatrix::Identity(dim, dim));
  };
  c.label = "hyperbolic_ball(" + std::to_string(dim) + ")";
  return c;
}

/// e^{−4νt} δ_{fiber} + dt² on [−1, 1]^{n}, coordinates (x_1, …, x_{n−1}, t).
inline ChartPatch warped_flat(int fiber_dim, double nu) {
  if (fiber_dim < 1 || !(nu > 0.0)) throw PreconditionError("catalog: warped_flat needs fiber_dim >= 1, nu > 0");
  const int n = fiber_dim + 1;
  ChartPatch c;
  c.dim = n;
  c.lo = filled(n, -1.0);
  c.hi = filled(n, 1.0);
  c.metric = [n, nu](const Point& x) {
    RealMatrix g = RealMatrix::Identity(n, n);
    const double w = std::exp(-4.0 * nu * x(n - 1));
    for (int a = 0; a + 1 < n; ++a) g(a, a) = w;
    return g;
  };
  c.label = "warped_flat(" + std::to_string(fiber_dim) + ")";
  return c;
}

/// SU(2) with the bi-invariant metric of the round S³ of radius r:
/// [e_i, e_j] = (2/r) ε_{ijk} e_k.
inline HomogeneousFrame su2(double radius = 1.0) {
  if (radius <= 0.0) throw PreconditionError("catalog: su2 radius must be positive");
  HomogeneousFrame f;
  f.dim = 3;
  f.label = "su2";
  f.structure_constants = RealVector::Zero(27);
  auto eps = [](int i, int j, int k) { return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) f.structure_constants(idx3(3, i, j, k)) = 2.0 / radius * eps(i, j, k);
  return f;
}

}  // namespace kslab::catalog
