#pragma once

// Two presentations of a Riemannian manifold, both working in an orthonormal
// frame {e_1, ..., e_n}:
//
//  * ChartBackend: a coordinate box with a closed-form metric. The frame is the
//    metric Gram–Schmidt of the coordinate basis (column order), and all
//    derivatives are Richardson-extrapolated central differences.
//  * HomogeneousBackend: a Lie algebra with structure constants and the
//    orthonormal left-invariant frame. Fields have constant components, so
//    every frame derivative vanishes and everything is exact algebra.
//
// Conventions shared by every module:
//   Γ_{kij} = g(∇_{e_k} e_i, e_j) = ω_{ij}(e_k)
//   R_{XY} = −∇_X∇_Y + ∇_Y∇_X + ∇_{[X,Y]},  R_{ijkl} = g(R_{e_i e_j} e_k, e_l)
// so the unit round sphere has R_{ijij} = +1 (i ≠ j), Ric_{jl} = Σ_i R_{ijil}.

#include <concepts>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include "kslab/fd.hpp"
#include "kslab/rng.hpp"
#include "kslab/types.hpp"

namespace kslab {

/// Index helpers for flattened 3- and 4-index arrays.
inline int idx3(int n, int a, int b, int c) { return (a * n + b) * n + c; }
inline int idx4(int n, int a, int b, int c, int d) { return ((a * n + b) * n + c) * n + d; }

/// Connection coefficients in an orthonormal frame.
struct FrameConnection {
  int dim = 0;
  RealVector gamma;      // Γ_{kij}, flattened with idx3
  RealVector structure;  // c^k_{ij} with [e_i, e_j] = c^k_{ij} e_k, stored at idx3(i, j, k)

  double operator()(int k, int i, int j) const { return gamma(idx3(dim, k, i, j)); }
  double bracket(int i, int j, int k) const { return structure(idx3(dim, i, j, k)); }

  /// max |Γ_{kij} + Γ_{kji}|.
  double antisymmetry_residual() const {
    double worst = 0.0;
    for (int k = 0; k < dim; ++k)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) worst = std::max(worst, std::abs((*this)(k, i, j) + (*this)(k, j, i)));
    return worst;
  }
};

struct CurvatureData {
  int dim = 0;
  RealVector riemann;  // R_{ijkl}, flattened with idx4
  RealMatrix ricci;
  double scalar = 0.0;
  Point at_point;

  double operator()(int i, int j, int k, int l) const { return riemann(idx4(dim, i, j, k, l)); }

  /// Largest violation of the algebraic symmetries and the first Bianchi identity.
  double symmetry_residual() const {
    const int n = dim;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double r = (*this)(i, j, k, l);
            worst = std::max({worst, std::abs(r + (*this)(j, i, k, l)), std::abs(r + (*this)(i, j, l, k)),
                              std::abs(r - (*this)(k, l, i, j)),
                              std::abs(r + (*this)(j, k, i, l) + (*this)(k, i, j, l))});
          }
    return worst;
  }

  /// max |R_{ijkl} − κ(δ_ik δ_jl − δ_il δ_jk)|.
  double constant_curvature_residual(double kappa) const {
    const int n = dim;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double model = kappa * ((i == k) * (j == l) - (i == l) * (j == k));
            worst = std::max(worst, std::abs((*this)(i, j, k, l) - model));
          }
    return worst;
  }
};

namespace detail {

/// Koszul formula in an orthonormal frame:
/// 2 Γ_{ijk} = c_{ijk} − c_{jki} + c_{kij}, with c_{ijk} = g([e_i, e_j], e_k).
inline RealVector koszul(int n, const RealVector& c) {
  RealVector gamma(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        gamma(idx3(n, i, j, k)) = 0.5 * (c(idx3(n, i, j, k)) - c(idx3(n, j, k, i)) + c(idx3(n, k, i, j)));
  return gamma;
}

/// Riemann tensor from Γ and its frame derivatives dgamma[i] = e_i(Γ).
inline CurvatureData assemble_curvature(int n, const RealVector& gamma, const std::vector<RealVector>& dgamma,
                                        const Point& x) {
  auto G = [&](int a, int b, int c) { return gamma(idx3(n, a, b, c)); };
  CurvatureData out;
  out.dim = n;
  out.at_point = x;
  out.riemann = RealVector::Zero(n * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          double r = 0.0;
          if (!dgamma.empty()) r += dgamma[i](idx3(n, j, k, m)) - dgamma[j](idx3(n, i, k, m));
          for (int l = 0; l < n; ++l)
            r += G(j, k, l) * G(i, l, m) - G(i, k, l) * G(j, l, m) - (G(i, j, l) - G(j, i, l)) * G(l, k, m);
          // Standard-sign R(e_i,e_j)e_k has e_m component r; flip to the R_{XY} convention.
          out.riemann(idx4(n, i, j, k, m)) = -r;
        }
  out.ricci = RealMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i) out.ricci(j, l) += out(i, j, i, l);
  out.scalar = out.ricci.trace();
  return out;
}

template <class T>
T zero_like(const T& v) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, Complex>) {
    return T{};
  } else {
    T z = v;
    z.setZero();
    return z;
  }
}

}  // namespace detail

/// Coordinate chart: axis-aligned box with a closed-form metric.
struct ChartPatch {
  int dim = 0;
  RealVector lo;
  RealVector hi;
  std::function<RealMatrix(const Point&)> metric;
  double fd_step = 0.0;  // 0 selects 1e-3 of the smallest box width
  std::string label;
  std::vector<int> blocks;  // factor dimensions when the metric is a Riemannian product

  double step() const {
    if (fd_step > 0.0) return fd_step;
    return 1e-3 * (hi - lo).minCoeff();
  }
};

/// Orthonormal frame at a point together with coordinate derivatives.
struct FrameJet {
  RealMatrix frame;                            // columns are e_i in coordinates
  std::vector<RealMatrix> first;               // ∂_a E
  std::vector<std::vector<RealMatrix>> second; // ∂_a ∂_b E
};

class ChartBackend {
 public:
  static constexpr double kSampleMargin = 0.1;

  explicit ChartBackend(ChartPatch chart) : chart_(std::move(chart)) {
    if (chart_.dim <= 0 || chart_.lo.size() != chart_.dim || chart_.hi.size() != chart_.dim)
      throw PreconditionError("chart: inconsistent dimension");
    if (((chart_.hi - chart_.lo).array() <= 0.0).any()) throw PreconditionError("chart: empty domain");
    if (!chart_.metric) throw PreconditionError("chart: metric missing");
  }

  int dim() const { return chart_.dim; }
  const ChartPatch& chart() const { return chart_; }
  double step() const { return chart_.step(); }

  bool contains(const Point& x) const {
    return x.size() == dim() && (x.array() >= chart_.lo.array()).all() && (x.array() <= chart_.hi.array()).all();
  }

  RealMatrix metric(const Point& x) const {
    if (!contains(x)) throw PreconditionError("chart '" + chart_.label + "': point outside domain");
    return chart_.metric(x);
  }

  /// Gram–Schmidt frame E = L^{-T} where g = L L^T.
  RealMatrix frame(const Point& x) const {
    const RealMatrix g = metric(x);
    if (max_abs(RealMatrix(g - g.transpose())) > 1e-12 * std::max(1.0, max_abs(g)))
      throw NumericalError("chart '" + chart_.label + "': metric not symmetric");
    Eigen::LLT<RealMatrix> llt(g);
    if (llt.info() != Eigen::Success) throw NumericalError("chart '" + chart_.label + "': metric not positive definite");
    const RealMatrix lt = llt.matrixU();
    return lt.triangularView<Eigen::Upper>().solve(RealMatrix::Identity(dim(), dim()));
  }

  /// Coordinate components of frame-component vectors: v_coord = E v_frame.
  RealMatrix frame_inverse(const Point& x) const { return frame(x).inverse(); }

  FrameJet frame_jet(const Point& x) const {
    const double h = step();
    FrameJet jet;
    jet.frame = frame(x);
    auto E = [this](const Point& y) { return frame(y); };
    for (int a = 0; a < dim(); ++a) jet.first.push_back(fd::partial(E, x, a, h));
    for (int a = 0; a < dim(); ++a) {
      std::vector<RealMatrix> row;
      for (int b = 0; b < dim(); ++b) {
        auto dE_b = [&, b](const Point& y) { return RealMatrix(fd::partial(E, y, b, h)); };
        row.push_back(fd::partial(dE_b, x, a, h));
      }
      jet.second.push_back(std::move(row));
    }
    return jet;
  }

  /// e_k(f) at x for any field f: Point -> value.
  template <class F>
  auto derivative(int k, const Point& x, F&& f) const {
    const RealMatrix E = frame(x);
    return fd::directional(std::forward<F>(f), x, RealVector(E.col(k)), step());
  }

  /// Derivative along an arbitrary coordinate vector.
  template <class F>
  auto derivative_along(const RealVector& v, const Point& x, F&& f) const {
    return fd::directional(std::forward<F>(f), x, v, step());
  }

  FrameConnection connection(const Point& x) const {
    const int n = dim();
    const RealMatrix E = frame(x);
    const RealMatrix Einv = E.inverse();
    auto Ef = [this](const Point& y) { return frame(y); };
    std::vector<RealMatrix> dE;  // dE[i] = e_i(E)
    for (int i = 0; i < n; ++i) dE.push_back(fd::directional(Ef, x, RealVector(E.col(i)), step()));
    FrameConnection conn;
    conn.dim = n;
    conn.structure = RealVector::Zero(n * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const RealVector bracket = dE[i].col(j) - dE[j].col(i);
        const RealVector frame_comp = Einv * bracket;
        for (int k = 0; k < n; ++k) conn.structure(idx3(n, i, j, k)) = frame_comp(k);
      }
    conn.gamma = detail::koszul(n, conn.structure);
    return conn;
  }

  CurvatureData curvature(const Point& x) const {
    const int n = dim();
    const FrameConnection conn = connection(x);
    auto gamma_at = [this](const Point& y) { return RealVector(connection(y).gamma); };
    std::vector<RealVector> dgamma;
    for (int i = 0; i < n; ++i) dgamma.push_back(derivative(i, x, gamma_at));
    return detail::assemble_curvature(n, conn.gamma, dgamma, x);
  }

  std::vector<Point> sample(int count, SplitMix64& rng) const {
    const RealVector width = chart_.hi - chart_.lo;
    const RealVector lo = chart_.lo + kSampleMargin * width;
    const RealVector hi = chart_.hi - kSampleMargin * width;
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
      Point p(dim());
      for (int a = 0; a < dim(); ++a) p(a) = rng.uniform(lo(a), hi(a));
      pts.push_back(std::move(p));
    }
    return pts;
  }

 private:
  ChartPatch chart_;
};

/// Lie algebra with an orthonormal basis: [e_i, e_j] = c^k_{ij} e_k.
struct HomogeneousFrame {
  int dim = 0;
  RealVector structure_constants;  // stored at idx3(i, j, k)
  std::string label;

  double c(int i, int j, int k) const { return structure_constants(idx3(dim, i, j, k)); }

  double antisymmetry_residual() const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) worst = std::max(worst, std::abs(c(i, j, k) + c(j, i, k)));
    return worst;
  }

  double jacobi_residual() const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            double s = 0.0;
            for (int m = 0; m < dim; ++m)
              s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
            worst = std::max(worst, std::abs(s));
          }
    return worst;
  }
};

class HomogeneousBackend {
 public:
  explicit HomogeneousBackend(HomogeneousFrame frame, double tol = 1e-12) : frame_(std::move(frame)) {
    if (frame_.dim <= 0 || frame_.structure_constants.size() != frame_.dim * frame_.dim * frame_.dim)
      throw PreconditionError("homogeneous: inconsistent structure constants");
    if (frame_.antisymmetry_residual() > tol) throw PreconditionError("homogeneous: c^k_ij not antisymmetric");
    if (frame_.jacobi_residual() > tol) throw PreconditionError("homogeneous: Jacobi identity violated");
    connection_.dim = frame_.dim;
    connection_.structure = frame_.structure_constants;
    connection_.gamma = detail::koszul(frame_.dim, frame_.structure_constants);
    curvature_ = detail::assemble_curvature(frame_.dim, connection_.gamma, {}, Point::Zero(frame_.dim));
  }

  int dim() const { return frame_.dim; }
  const HomogeneousFrame& algebra() const { return frame_; }

  FrameConnection connection(const Point&) const { return connection_; }
  CurvatureData curvature(const Point&) const { return curvature_; }

  /// Fields on this backend have constant frame components.
  template <class F>
  auto derivative(int, const Point& x, F&& f) const {
    return detail::zero_like(f(x));
  }

  std::vector<Point> sample(int count, SplitMix64&) const {
    return std::vector<Point>(static_cast<std::size_t>(count), Point::Zero(dim()));
  }

 private:
  HomogeneousFrame frame_;
  FrameConnection connection_;
  CurvatureData curvature_;
};

template <class B>
concept GeometryBackend = requires(const B& b, const Point& x, SplitMix64& rng) {
  { b.dim() } -> std::convertible_to<int>;
  { b.connection(x) } -> std::same_as<FrameConnection>;
  { b.curvature(x) } -> std::same_as<CurvatureData>;
  { b.derivative(0, x, [](const Point&) { return 0.0; }) } -> std::convertible_to<double>;
  { b.sample(1, rng) } -> std::same_as<std::vector<Point>>;
};

/// Γ-based frame connection, evaluated with fd error tracking.
template <GeometryBackend B>
FrameConnection frame_connection(const B& backend, const Point& x) {
  return backend.connection(x);
}

template <GeometryBackend B>
CurvatureData curvature(const B& backend, const Point& x) {
  return backend.curvature(x);
}

/// max over samples of ‖Ric − k g‖ in the orthonormal frame.
template <GeometryBackend B>
CheckResult verify_einstein(const B& backend, const std::vector<Point>& samples, double k) {
  fd::ErrorScope scope;
  CheckResult out;
  const int n = backend.dim();
  for (const auto& x : samples) {
    const CurvatureData R = backend.curvature(x);
    out.residual = std::max(out.residual, max_abs(RealMatrix(R.ricci - k * RealMatrix::Identity(n, n))));
  }
  out.fd_error = scope.max_error();
  return out;
}

/// max over samples of |R_{ijkl} − κ(δ_ik δ_jl − δ_il δ_jk)|.
template <GeometryBackend B>
CheckResult verify_constant_curvature(const B& backend, const std::vector<Point>& samples, double kappa) {
  fd::ErrorScope scope;
  CheckResult out;
  for (const auto& x : samples) out.residual = std::max(out.residual, backend.curvature(x).constant_curvature_residual(kappa));
  out.fd_error = scope.max_error();
  return out;
}

template <GeometryBackend B>
CheckResult verify_curvature_symmetries(const B& backend, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  CheckResult out;
  for (const auto& x : samples) out.residual = std::max(out.residual, backend.curvature(x).symmetry_residual());
  out.fd_error = scope.max_error();
  return out;
}

/// |R − 4n(n−1)μ²| / max(|4n(n−1)μ²|, 1) where μ² is real for real or
/// imaginary Killing constants.
template <GeometryBackend B>
CheckResult verify_killing_scalar(const B& backend, const std::vector<Point>& samples, double mu_squared) {
  fd::ErrorScope scope;
  CheckResult out;
  const int n = backend.dim();
  const double expected = 4.0 * n * (n - 1) * mu_squared;
  for (const auto& x : samples) out.residual = std::max(out.residual, relative_diff(backend.curvature(x).scalar, expected));
  out.fd_error = scope.max_error();
  return out;
}

/// |e_k(g(e_i, e_j)) − Γ_{kij} − Γ_{kji}| for chart backends.
inline CheckResult metric_compatibility(const ChartBackend& chart, const Point& x) {
  fd::ErrorScope scope;
  const int n = chart.dim();
  const FrameConnection conn = chart.connection(x);
  auto moving_gram = [&](const Point& y) {
    const RealMatrix Ey = chart.frame(y);
    return RealMatrix(Ey.transpose() * chart.metric(y) * Ey);
  };
  CheckResult out;
  for (int k = 0; k < n; ++k) {
    const RealMatrix d = chart.derivative(k, x, moving_gram);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.residual = std::max(out.residual, std::abs(d(i, j) - conn(k, i, j) - conn(k, j, i)));
  }
  out.fd_error = scope.max_error();
  return out;
}

/// Torsion check with vector fields given by frame components:
/// ‖∇_X Y − ∇_Y X − [X, Y]‖ where the bracket is computed in coordinates.
inline CheckResult torsion_residual(const ChartBackend& chart, const Point& x,
                                    const std::function<RealVector(const Point&)>& X,
                                    const std::function<RealVector(const Point&)>& Y) {
  fd::ErrorScope scope;
  const int n = chart.dim();
  const FrameConnection conn = chart.connection(x);
  auto covariant = [&](const std::function<RealVector(const Point&)>& A, const std::function<RealVector(const Point&)>& B) {
    const RealVector a = A(x);
    const RealVector b = B(x);
    RealVector out = RealVector::Zero(n);
    for (int k = 0; k < n; ++k) {
      const RealVector dB = chart.derivative(k, x, B);
      for (int l = 0; l < n; ++l) {
        double s = dB(l);
        for (int i = 0; i < n; ++i) s += b(i) * conn(k, i, l);
        out(l) += a(k) * s;
      }
    }
    return out;
  };
  auto coord = [&](const std::function<RealVector(const Point&)>& A) {
    return [&chart, &A](const Point& y) { return RealVector(chart.frame(y) * A(y)); };
  };
  auto Xc = coord(X);
  auto Yc = coord(Y);
  const RealVector bracket_coord = chart.derivative_along(Xc(x), x, Yc) - chart.derivative_along(Yc(x), x, Xc);
  const RealVector bracket = chart.frame(x).inverse() * bracket_coord;
  const RealVector torsion_free = covariant(X, Y) - covariant(Y, X);
  CheckResult out;
  out.residual = max_abs(RealVector(torsion_free - bracket));
  out.fd_error = scope.max_error();
  return out;
}

}  // namespace kslab
