#pragma once

// Symmetric 2-tensor calculus in orthonormal-frame components.

#include <functional>
#include <numeric>
#include <vector>

#include "kslab/geometry.hpp"

namespace kslab {

/// Frame components h_ij(x) of a symmetric 2-tensor field.
struct SymTensorField {
  std::function<RealMatrix(const Point&)> components;

  RealMatrix operator()(const Point& x) const { return components(x); }
};

struct TTReport {
  double max_trace = 0.0;
  double max_divergence = 0.0;
  double fd_error = 0.0;
  bool traceless = false;
  bool transverse = false;
};

/// ⟨a, b⟩ = Σ a_ij b_ij.
inline double pairing(const RealMatrix& a, const RealMatrix& b) { return (a.array() * b.array()).sum(); }

inline double trace(const SymTensorField& h, const Point& x) { return h(x).trace(); }

/// (∇_{e_k} h)_ij = e_k(h_ij) − Γ_{kil} h_lj − Γ_{kjl} h_il.
template <GeometryBackend B>
RealMatrix covariant_derivative(const B& backend, const SymTensorField& h, int k, const Point& x) {
  const FrameConnection conn = backend.connection(x);
  const RealMatrix value = h(x);
  RealMatrix out = backend.derivative(k, x, h.components);
  const int n = backend.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) out(i, j) -= conn(k, i, l) * value(l, j) + conn(k, j, l) * value(i, l);
  return out;
}

/// (δh)_j = −Σ_i (∇_{e_i} h)_ij.
template <GeometryBackend B>
RealVector divergence(const B& backend, const SymTensorField& h, const Point& x) {
  const int n = backend.dim();
  RealVector out = RealVector::Zero(n);
  for (int i = 0; i < n; ++i) out -= covariant_derivative(backend, h, i, x).row(i).transpose();
  return out;
}

/// The two pieces of the rough Laplacian restricted to frame directions `dirs`:
///   iterated   = Σ_k ∇_{e_k}(∇_{e_k} h)
///   correction = Σ_k ∇_{∇_{e_k} e_k} h
/// so that ∇*∇h = −(iterated − correction) when `dirs` is every direction.
struct LaplacianParts {
  RealMatrix iterated;
  RealMatrix correction;
};

template <GeometryBackend B>
LaplacianParts laplacian_parts(const B& backend, const SymTensorField& h, const Point& x, const std::vector<int>& dirs) {
  const int n = backend.dim();
  const FrameConnection conn = backend.connection(x);
  std::vector<RealMatrix> first(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) first[static_cast<std::size_t>(l)] = covariant_derivative(backend, h, l, x);
  LaplacianParts parts{RealMatrix::Zero(n, n), RealMatrix::Zero(n, n)};
  for (int k : dirs) {
    SymTensorField Tk{[&backend, &h, k](const Point& y) { return covariant_derivative(backend, h, k, y); }};
    parts.iterated += covariant_derivative(backend, Tk, k, x);
    for (int l = 0; l < n; ++l) parts.correction += conn(k, k, l) * first[static_cast<std::size_t>(l)];
  }
  return parts;
}

inline std::vector<int> all_directions(int n) {
  std::vector<int> d(static_cast<std::size_t>(n));
  std::iota(d.begin(), d.end(), 0);
  return d;
}

/// (∇*∇h)_ij = −Σ_k (∇_{e_k}∇_{e_k} h)_ij + (∇_{∇_{e_k} e_k} h)_ij.
template <GeometryBackend B>
RealMatrix rough_laplacian(const B& backend, const SymTensorField& h, const Point& x) {
  const LaplacianParts p = laplacian_parts(backend, h, x, all_directions(backend.dim()));
  return -(p.iterated - p.correction);
}

/// (R̊h)_ij = Σ_kl R_{ikjl} h_kl.
inline RealMatrix curvature_action(const CurvatureData& R, const RealMatrix& h) {
  const int n = R.dim;
  RealMatrix out = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i, j) += R(i, k, j, l) * h(k, l);
  return out;
}

template <GeometryBackend B>
RealMatrix curvature_action(const B& backend, const SymTensorField& h, const Point& x) {
  return curvature_action(backend.curvature(x), h(x));
}

/// ∇*∇h − 2R̊h.
template <GeometryBackend B>
RealMatrix einstein_operator(const B& backend, const SymTensorField& h, const Point& x) {
  return rough_laplacian(backend, h, x) - 2.0 * curvature_action(backend, h, x);
}

/// Einstein operator plus 2k h, valid when Ric = k g.
inline RealMatrix lichnerowicz_shift(const RealMatrix& einstein_value, const RealMatrix& h, double k) {
  return einstein_value + 2.0 * k * h;
}

/// Block field g₁/n₁ − g₂/n₂ on a two-factor product chart.
inline SymTensorField product_unstable_direction(const ChartPatch& product) {
  if (product.blocks.size() != 2) throw PreconditionError("tensorfield: backend is not a two-factor product");
  const int n1 = product.blocks[0];
  const int n2 = product.blocks[1];
  RealMatrix h = RealMatrix::Zero(n1 + n2, n1 + n2);
  h.topLeftCorner(n1, n1).diagonal().setConstant(1.0 / n1);
  h.bottomRightCorner(n2, n2).diagonal().setConstant(-1.0 / n2);
  return SymTensorField{[h](const Point&) { return h; }};
}

template <GeometryBackend B>
TTReport tt_report(const B& backend, const SymTensorField& h, const std::vector<Point>& samples, double tolerance) {
  fd::ErrorScope scope;
  TTReport r;
  for (const auto& x : samples) {
    r.max_trace = std::max(r.max_trace, std::abs(trace(h, x)));
    r.max_divergence = std::max(r.max_divergence, max_abs(divergence(backend, h, x)));
  }
  r.fd_error = scope.max_error();
  r.traceless = r.max_trace <= tolerance;
  r.transverse = r.max_divergence <= tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Field families.

inline SymTensorField metric_field(int n) {
  return SymTensorField{[n](const Point&) { return RealMatrix(RealMatrix::Identity(n, n)); }};
}

inline SymTensorField constant_field(RealMatrix h) {
  return SymTensorField{[h = std::move(h)](const Point&) { return h; }};
}

inline RealMatrix random_symmetric(int n, SplitMix64& rng) { return rng.symmetric_matrix(n); }

inline RealMatrix random_traceless(int n, SplitMix64& rng) {
  RealMatrix h = rng.symmetric_matrix(n);
  h.diagonal().array() -= h.trace() / n;
  return h;
}

/// h_ij(x) = A_ij + Σ_a B^a_ij x_a + Σ_{a≤b} C^{ab}_ij x_a x_b with symmetric
/// coefficient matrices drawn in the order A, B^0…B^{m−1}, C^{00}, C^{01}, …
/// `coords` is the number of coordinates the components depend on.
inline SymTensorField random_polynomial_field(int n, int coords, SplitMix64& rng, double scale = 0.5) {
  RealMatrix A = rng.symmetric_matrix(n);
  std::vector<RealMatrix> lin;
  for (int a = 0; a < coords; ++a) lin.push_back(scale * rng.symmetric_matrix(n));
  std::vector<RealMatrix> quad;
  for (int a = 0; a < coords; ++a)
    for (int b = a; b < coords; ++b) quad.push_back(scale * scale * rng.symmetric_matrix(n));
  return SymTensorField{[=](const Point& x) {
    RealMatrix h = A;
    int q = 0;
    for (int a = 0; a < coords; ++a) {
      h += x(a) * lin[static_cast<std::size_t>(a)];
      for (int b = a; b < coords; ++b) h += x(a) * x(b) * quad[static_cast<std::size_t>(q++)];
    }
    return h;
  }};
}

}  // namespace kslab
