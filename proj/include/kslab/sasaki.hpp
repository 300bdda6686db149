#pragma once

// Regular Sasaki structures on circle bundles over Kähler bases, in a local
// trivialization.
//
// Base: complex coordinates z_b = x_b + √−1 y_b ordered (x_1, y_1, x_2, …),
// J∂_x = ∂_y, and a Kähler potential K that is a sum of c·log(1 + |z|²) over
// blocks (c = (q+1)/k for a CP^q block with Einstein constant k). With H the
// coordinate Hessian of K:
//   G = ½(H − J H J),   Ω = G J  (Ω = G(·, J·)),   A = Jᵀ ∇K,   dA = 2Ω.
//
// Total space: coordinates (θ, x), metric g = π*G + η⊗η with η = dθ + π*A,
// Reeb field ξ = ∂_θ. The Gram–Schmidt frame of g is (ξ, X̃_1, …, X̃_2p), the
// horizontal lifts of the base Gram–Schmidt frame, so total frame index 0 is
// ξ and index i + 1 is X̃_i.
//
// 2-forms are evaluated as dη(X, Y) = ½(X(η(Y)) − Y(η(X)) − η([X, Y])), the
// factor under which g(X, φY) = dη(X, Y) holds when the curvature form is
// written dη = 2π*Ω with the unnormalized exterior derivative.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "kslab/geometry.hpp"
#include "kslab/rng.hpp"
#include "kslab/tensorfield.hpp"

namespace kslab {

struct PotentialBlock {
  int offset = 0;
  int size = 2;  // real dimension
  double c = 1.0;
};

namespace detail {

inline RealMatrix standard_complex_structure(int dim) {
  RealMatrix J = RealMatrix::Zero(dim, dim);
  for (int b = 0; b + 1 < dim; b += 2) {
    J(b + 1, b) = 1.0;
    J(b, b + 1) = -1.0;
  }
  return J;
}

struct PotentialJet {
  RealVector gradient;
  RealMatrix hessian;
};

inline PotentialJet potential_jet(const std::vector<PotentialBlock>& blocks, int dim, const Point& x) {
  PotentialJet jet{RealVector::Zero(dim), RealMatrix::Zero(dim, dim)};
  for (const auto& b : blocks) {
    const RealVector z = x.segment(b.offset, b.size);
    const double s = 1.0 + z.squaredNorm();
    jet.gradient.segment(b.offset, b.size) = (2.0 * b.c / s) * z;
    jet.hessian.block(b.offset, b.offset, b.size, b.size) =
        (2.0 * b.c / s) * RealMatrix::Identity(b.size, b.size) - (4.0 * b.c / (s * s)) * (z * z.transpose());
  }
  return jet;
}

}  // namespace detail

struct KaehlerBase {
  std::string name;
  int p = 0;  // complex dimension
  double einstein_k = 0.0;
  std::vector<PotentialBlock> potential;
  RealMatrix J0;  // complex structure in coordinates
  ChartPatch chart;
  ChartBackend backend;

  int dim() const { return 2 * p; }

  RealMatrix metric(const Point& x) const { return backend.metric(x); }

  /// Coordinate components A_a of the connection potential.
  RealVector potential_A(const Point& x) const {
    return J0.transpose() * detail::potential_jet(potential, dim(), x).gradient;
  }

  /// Coordinate components Ω_ab = G(∂_a, J∂_b).
  RealMatrix omega_coord(const Point& x) const { return metric(x) * J0; }

  /// J in the Gram–Schmidt frame; equal to Ω(X_i, X_j) as a matrix.
  RealMatrix complex_structure(const Point& x) const {
    const RealMatrix E = backend.frame(x);
    return E.inverse() * J0 * E;
  }
};

/// Base catalog: "S2", "S2xS2" or "CP2" with Einstein constant k.
inline KaehlerBase build_base(const std::string& name, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw PreconditionError("sasaki: Einstein constant must be positive");
  int p = 0;
  std::vector<PotentialBlock> potential;
  std::vector<int> factor_dims;
  if (name == "S2") {
    p = 1;
    potential = {{0, 2, 2.0 / k}};
  } else if (name == "S2xS2") {
    p = 2;
    potential = {{0, 2, 2.0 / k}, {2, 2, 2.0 / k}};
    factor_dims = {2, 2};
  } else if (name == "CP2") {
    p = 2;
    potential = {{0, 4, 3.0 / k}};
  } else {
    throw PreconditionError("sasaki: unknown base '" + name + "'");
  }
  const int n = 2 * p;
  const RealMatrix J0 = detail::standard_complex_structure(n);
  ChartPatch c;
  c.dim = n;
  c.lo = RealVector::Constant(n, -1.0);
  c.hi = RealVector::Constant(n, 1.0);
  c.label = name + "(" + std::to_string(k) + ")";
  c.blocks = factor_dims;
  c.metric = [potential, J0, n](const Point& x) {
    const RealMatrix H = detail::potential_jet(potential, n, x).hessian;
    return RealMatrix(0.5 * (H - J0 * H * J0));
  };
  ChartBackend backend(c);
  return KaehlerBase{name, p, k, potential, J0, std::move(c), std::move(backend)};
}

struct SasakiBundle {
  KaehlerBase base;
  ChartPatch chart;
  ChartBackend backend;

  int p() const { return base.p; }
  int dim() const { return 2 * base.p + 1; }
  static constexpr int kReeb = 0;

  Point project(const Point& x) const { return x.tail(base.dim()); }

  RealVector eta(const Point& x) const {
    RealVector e(dim());
    e(0) = 1.0;
    e.tail(base.dim()) = base.potential_A(project(x));
    return e;
  }

  RealVector xi() const {
    RealVector v = RealVector::Zero(dim());
    v(0) = 1.0;
    return v;
  }

  /// Horizontal lift of a base coordinate vector v at x: v^a(∂_a − A_a ∂_θ).
  RealVector lift(const Point& x, const RealVector& v) const {
    RealVector out(dim());
    out(0) = -base.potential_A(project(x)).dot(v);
    out.tail(base.dim()) = v;
    return out;
  }

  /// φ in coordinates: lift ∘ J ∘ π_*.
  RealMatrix phi_coord(const Point& x) const {
    const int m = base.dim();
    const RealVector A = base.potential_A(project(x));
    RealMatrix lift_m(dim(), m);
    lift_m.row(0) = -A.transpose();
    lift_m.bottomRows(m) = RealMatrix::Identity(m, m);
    RealMatrix proj = RealMatrix::Zero(m, dim());
    proj.rightCols(m) = RealMatrix::Identity(m, m);
    return lift_m * base.J0 * proj;
  }

  RealMatrix phi_frame(const Point& x) const {
    const RealMatrix E = backend.frame(x);
    return E.inverse() * phi_coord(x) * E;
  }

  /// h̃ = π*h in total frame components.
  SymTensorField lift_tensor(const SymTensorField& h) const {
    const int m = base.dim();
    return SymTensorField{[h, m](const Point& x) {
      RealMatrix out = RealMatrix::Zero(m + 1, m + 1);
      out.bottomRightCorner(m, m) = h(x.tail(m));
      return out;
    }};
  }

  /// Total-space sample points built from base samples and θ draws.
  std::vector<Point> sample(int count, SplitMix64& rng) const { return backend.sample(count, rng); }
};

inline SasakiBundle build_total(const KaehlerBase& base) {
  const int m = base.dim();
  if (m <= 0 || base.potential.empty()) throw PreconditionError("sasaki: base has no connection potential");
  ChartPatch c;
  c.dim = m + 1;
  c.lo = RealVector(m + 1);
  c.hi = RealVector(m + 1);
  c.lo(0) = -1.0;
  c.hi(0) = 1.0;
  c.lo.tail(m) = base.chart.lo;
  c.hi.tail(m) = base.chart.hi;
  c.label = "sasaki(" + base.chart.label + ")";
  c.metric = [G = base.chart.metric, blocks = base.potential, J = base.J0, m](const Point& x) {
    const Point y = x.tail(m);
    const RealVector A = J.transpose() * detail::potential_jet(blocks, m, y).gradient;
    RealMatrix g(m + 1, m + 1);
    g(0, 0) = 1.0;
    g.block(0, 1, 1, m) = A.transpose();
    g.block(1, 0, m, 1) = A;
    g.bottomRightCorner(m, m) = G(y) + A * A.transpose();
    return g;
  };
  ChartBackend backend(c);
  return SasakiBundle{base, std::move(c), std::move(backend)};
}

// ---------------------------------------------------------------------------
// Base and structure checks.

/// tr_G h(J·, ·) = Σ_k h(J X_k, X_k) in frame components.
inline double trace_j(const RealMatrix& J, const RealMatrix& h) { return (h * J).trace(); }

/// h∘J = h(J·, J·) in frame components.
inline RealMatrix compose_j(const RealMatrix& J, const RealMatrix& h) { return J.transpose() * h * J; }

struct KaehlerCheck {
  double j_squared = 0.0;
  double j_isometry = 0.0;
  double d_omega = 0.0;
  double potential = 0.0;  // ‖dA − 2Ω‖
  double fd_error = 0.0;
};

inline KaehlerCheck kaehler_check(const KaehlerBase& b, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  KaehlerCheck out;
  const int n = b.dim();
  const RealMatrix id = RealMatrix::Identity(n, n);
  const std::function<RealMatrix(const Point&)> omega = [&b](const Point& y) { return b.omega_coord(y); };
  const std::function<RealVector(const Point&)> A = [&b](const Point& y) { return b.potential_A(y); };
  for (const auto& x : samples) {
    const RealMatrix G = b.metric(x);
    out.j_squared = std::max(out.j_squared, max_abs(RealMatrix(b.J0 * b.J0 + id)));
    out.j_isometry = std::max(out.j_isometry, max_abs(RealMatrix(b.J0.transpose() * G * b.J0 - G)));
    std::vector<RealMatrix> dO;
    RealMatrix dA(n, n);
    for (int a = 0; a < n; ++a) {
      dO.push_back(fd::partial(omega, x, a, b.chart.step()));
      dA.row(a) = fd::partial(A, x, a, b.chart.step()).transpose();
    }
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double v = dO[static_cast<std::size_t>(a)](c, d) + dO[static_cast<std::size_t>(c)](d, a) +
                           dO[static_cast<std::size_t>(d)](a, c);
          out.d_omega = std::max(out.d_omega, std::abs(v));
        }
    const RealMatrix curl = dA - dA.transpose();  // (dA)_ab = ∂_a A_b − ∂_b A_a
    out.potential = std::max(out.potential, max_abs(RealMatrix(curl - 2.0 * b.omega_coord(x))));
  }
  out.fd_error = scope.max_error();
  return out;
}

struct AxiomCheck {
  double volume = 0.0;   // min over samples of |η∧(dη)^p| / (p! vol_g)
  double axiom2 = 0.0;   // |η(ξ) − 1|
  double axiom3 = 0.0;   // ‖φ² + id − η⊗ξ‖
  double axiom4 = 0.0;   // |g(φX, φY) − g(X, Y) + η(X)η(Y)|
  double axiom5 = 0.0;   // |g(X, φY) − dη(X, Y)|
  double phi_xi = 0.0;   // ‖φξ‖
  double eta_phi = 0.0;  // ‖η∘φ‖
  double nabla_xi = 0.0; // ‖∇_X ξ + φX‖ over frame X
  double fd_error = 0.0;

  double max_residual() const {
    return std::max({axiom2, axiom3, axiom4, axiom5, phi_xi, eta_phi, nabla_xi, std::abs(volume - 1.0)});
  }
};

inline AxiomCheck axiom_check(const SasakiBundle& s, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  AxiomCheck out;
  out.volume = std::numeric_limits<double>::infinity();
  const int n = s.dim();
  const int m = s.base.dim();
  const RealMatrix id = RealMatrix::Identity(n, n);
  const std::function<RealVector(const Point&)> eta = [&s](const Point& y) { return s.eta(y); };
  for (const auto& x : samples) {
    const RealMatrix g = s.backend.metric(x);
    const RealMatrix phi = s.phi_coord(x);
    const RealVector e = s.eta(x);
    const RealVector xi = s.xi();
    RealMatrix deta(n, n);
    for (int a = 0; a < n; ++a) deta.row(a) = fd::partial(eta, x, a, s.chart.step()).transpose();
    const RealMatrix d_eta = 0.5 * (deta - deta.transpose());
    // η∧(dη)^p on (∂_θ, ∂_1, …) is p!·Pf of the horizontal block, since dη has no θ leg.
    const double pf = std::sqrt(std::abs(d_eta.bottomRightCorner(m, m).determinant()));
    out.volume = std::min(out.volume, pf / std::sqrt(g.determinant()));
    out.axiom2 = std::max(out.axiom2, std::abs(e.dot(xi) - 1.0));
    out.axiom3 = std::max(out.axiom3, max_abs(RealMatrix(phi * phi + id - xi * e.transpose())));
    out.axiom4 = std::max(out.axiom4, max_abs(RealMatrix(phi.transpose() * g * phi - g + e * e.transpose())));
    out.axiom5 = std::max(out.axiom5, max_abs(RealMatrix(g * phi - d_eta)));
    out.phi_xi = std::max(out.phi_xi, (phi * xi).norm());
    out.eta_phi = std::max(out.eta_phi, (e.transpose() * phi).norm());
    const FrameConnection conn = s.backend.connection(x);
    const RealMatrix phi_f = s.phi_frame(x);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        out.nabla_xi = std::max(out.nabla_xi, std::abs(conn(k, SasakiBundle::kReeb, j) + phi_f(j, k)));
  }
  out.fd_error = scope.max_error();
  return out;
}

/// max |R(e_i, ξ, e_j, e_l) − (−g(ξ, e_j)δ_il + δ_ij g(ξ, e_l))| (curvature condition for Sasaki).
inline CheckResult curvature_condition_check(const SasakiBundle& s, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  CheckResult out;
  const int n = s.dim();
  const int r = SasakiBundle::kReeb;
  for (const auto& x : samples) {
    const CurvatureData R = s.backend.curvature(x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const double expected = -(j == r ? 1.0 : 0.0) * (i == l ? 1.0 : 0.0) + (i == j ? 1.0 : 0.0) * (l == r ? 1.0 : 0.0);
          out.residual = std::max(out.residual, std::abs(R(i, r, j, l) - expected));
        }
  }
  out.fd_error = scope.max_error();
  return out;
}

// ---------------------------------------------------------------------------
// Submersion calculus.

namespace detail {

/// (∇_V W)_l = Σ_k V_k e_k(W_l) + Σ_kj V_k W_j Γ_{kjl}, with V, W in frame
/// components and W given as a field.
template <GeometryBackend B>
RealVector covariant_derivative_vector(const B& backend, const RealVector& V,
                                       const std::function<RealVector(const Point&)>& W, const Point& x) {
  const int n = backend.dim();
  const FrameConnection conn = backend.connection(x);
  const RealVector w = W(x);
  RealVector out = RealVector::Zero(n);
  for (int k = 0; k < n; ++k) {
    if (V(k) == 0.0) continue;
    out += V(k) * backend.derivative(k, x, W);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) out(l) += V(k) * w(j) * conn(k, j, l);
  }
  return out;
}

inline RealMatrix horizontal_block(const RealMatrix& m) { return m.bottomRightCorner(m.rows() - 1, m.cols() - 1); }

}  // namespace detail

/// Random base vector field with coordinate components v(x) = a + B x.
inline std::function<RealVector(const Point&)> random_base_vector_field(int dim, SplitMix64& rng) {
  const RealVector a = rng.normal_vector(dim);
  RealMatrix B(dim, dim);
  for (int i = 0; i < dim; ++i) B.row(i) = 0.5 * rng.normal_vector(dim).transpose();
  return [a, B](const Point& x) { return RealVector(a + B * x); };
}

struct ConnectionLiftCheck {
  double bracket = 0.0;     // ‖[ξ, X̃]‖
  double horizontal = 0.0;  // ‖∇_X̃ Ỹ − (∇_X Y)~ + Ω(X, Y)ξ‖
  double mixed = 0.0;       // max of ‖∇_ξ X̃ + φX̃‖, ‖∇_X̃ ξ + φX̃‖
  double vertical = 0.0;    // ‖∇_ξ ξ‖
  double fd_error = 0.0;

  double max_residual() const { return std::max({bracket, horizontal, mixed, vertical}); }
};

inline ConnectionLiftCheck connection_lift_check(const SasakiBundle& s, const std::vector<Point>& samples, SplitMix64& rng,
                                  int field_pairs = 3) {
  fd::ErrorScope scope;
  ConnectionLiftCheck out;
  const int n = s.dim();
  const int m = s.base.dim();
  for (int f = 0; f < field_pairs; ++f) {
    const auto Xc = random_base_vector_field(m, rng);
    const auto Yc = random_base_vector_field(m, rng);
    // Frame components of the fields on the base and of their lifts on the total space.
    const std::function<RealVector(const Point&)> Xb = [&s, Xc](const Point& y) {
      return RealVector(s.base.backend.frame_inverse(y) * Xc(y));
    };
    const std::function<RealVector(const Point&)> Yb = [&s, Yc](const Point& y) {
      return RealVector(s.base.backend.frame_inverse(y) * Yc(y));
    };
    const std::function<RealVector(const Point&)> Xt = [&s, Xc](const Point& y) {
      return RealVector(s.backend.frame_inverse(y) * s.lift(y, Xc(s.project(y))));
    };
    const std::function<RealVector(const Point&)> Yt = [&s, Yc](const Point& y) {
      return RealVector(s.backend.frame_inverse(y) * s.lift(y, Yc(s.project(y))));
    };
    const std::function<RealVector(const Point&)> Xi = [n](const Point&) {
      RealVector v = RealVector::Zero(n);
      v(0) = 1.0;
      return v;
    };
    for (const auto& x : samples) {
      const Point y = s.project(x);
      const RealMatrix J = s.base.complex_structure(y);
      const RealVector a = Xb(y);
      const RealVector b = Yb(y);
      const RealVector xi = Xi(x);

      RealVector expected(n);
      expected(0) = -a.dot(J * b);
      expected.tail(m) = detail::covariant_derivative_vector(s.base.backend, a, Yb, y);
      const RealVector got = detail::covariant_derivative_vector(s.backend, Xt(x), Yt, x);
      out.horizontal = std::max(out.horizontal, (got - expected).norm());

      RealVector phi_x = RealVector::Zero(n);
      phi_x.tail(m) = J * a;
      const RealVector xi_x = detail::covariant_derivative_vector(s.backend, xi, Xt, x);
      const RealVector x_xi = detail::covariant_derivative_vector(s.backend, Xt(x), Xi, x);
      out.mixed = std::max({out.mixed, (xi_x + phi_x).norm(), (x_xi + phi_x).norm()});
      out.bracket = std::max(out.bracket, (xi_x - x_xi).norm());
      out.vertical = std::max(out.vertical, detail::covariant_derivative_vector(s.backend, xi, Xi, x).norm());
    }
  }
  out.fd_error = scope.max_error();
  return out;
}

/// Relative residuals of the four Laplacian relations, horizontal indices only:
///   Σ_k ∇_k∇_k h̃ = π*(Σ_k ∇_k∇_k h) − 2h̃
///   Σ_k ∇_{∇_k X̃_k} h̃ = π*(Σ_k ∇_{∇_k X_k} h)
///   ∇_ξ∇_ξ h̃ = −2h̃ + 2h̃(φ·, φ·)
///   ∇*∇h̃ = π*(∇*∇h) + 4h̃ − 2h̃(φ·, φ·)
struct LaplacianLiftCheck {
  double iterated = 0.0;
  double correction = 0.0;
  double vertical = 0.0;
  double combined = 0.0;
  double fd_error = 0.0;

  double max_residual() const { return std::max({iterated, correction, vertical, combined}); }
};

inline LaplacianLiftCheck laplacian_lift_check(const SasakiBundle& s, const SymTensorField& h, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  LaplacianLiftCheck out;
  const int m = s.base.dim();
  const SymTensorField ht = s.lift_tensor(h);
  std::vector<int> horizontal(static_cast<std::size_t>(m));
  std::iota(horizontal.begin(), horizontal.end(), 1);
  for (const auto& x : samples) {
    const Point y = s.project(x);
    const RealMatrix hy = h(y);
    const RealMatrix hJJ = compose_j(s.base.complex_structure(y), hy);
    const LaplacianParts base = laplacian_parts(s.base.backend, h, y, all_directions(m));
    const LaplacianParts hor = laplacian_parts(s.backend, ht, x, horizontal);
    const LaplacianParts ver = laplacian_parts(s.backend, ht, x, {SasakiBundle::kReeb});
    const RealMatrix hor_it = detail::horizontal_block(hor.iterated);
    const RealMatrix hor_co = detail::horizontal_block(hor.correction);
    const RealMatrix ver_it = detail::horizontal_block(ver.iterated);
    const RealMatrix ver_co = detail::horizontal_block(ver.correction);
    out.iterated = std::max(out.iterated, relative_diff(hor_it, RealMatrix(base.iterated - 2.0 * hy)));
    out.correction = std::max(out.correction, relative_diff(hor_co, base.correction));
    out.vertical = std::max(out.vertical, relative_diff(ver_it, RealMatrix(-2.0 * hy + 2.0 * hJJ)));
    const RealMatrix total = -(hor_it + ver_it - hor_co - ver_co);
    const RealMatrix rough_base = -(base.iterated - base.correction);
    out.combined = std::max(out.combined, relative_diff(total, RealMatrix(rough_base + 4.0 * hy - 2.0 * hJJ)));
  }
  out.fd_error = scope.max_error();
  return out;
}

/// Relative residuals of the submersion curvature relations:
///   R^g(X̃, ξ, Ỹ, ξ) = g(X̃, Ỹ)
///   R^g(X̃, Ỹ, Z̃, W̃) = R^G(X, Y, Z, W) − 2Ω(X,Y)Ω(Z,W) − Ω(X,Z)Ω(Y,W) + Ω(X,W)Ω(Y,Z)
///   Ric^g(X̃, Ỹ) = Ric^G(X, Y) − 2g(X̃, Ỹ)
///   R̊^g h̃ = π*(R̊^G h) − 3h̃(φ·, φ·) − π*Ω · Σ_k h̃(X̃_k, φX̃_k)
struct CurvatureLiftCheck {
  double mixed = 0.0;
  double horizontal = 0.0;
  double ricci = 0.0;
  double curvature_action = 0.0;
  double fd_error = 0.0;

  double max_residual() const { return std::max({mixed, horizontal, ricci, curvature_action}); }
};

inline CurvatureLiftCheck curvature_lift_check(const SasakiBundle& s, const SymTensorField& h, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  CurvatureLiftCheck out;
  const int m = s.base.dim();
  const int r = SasakiBundle::kReeb;
  for (const auto& x : samples) {
    const Point y = s.project(x);
    const CurvatureData Rg = s.backend.curvature(x);
    const CurvatureData RG = s.base.backend.curvature(y);
    const RealMatrix W = s.base.complex_structure(y);  // Ω(X_i, X_j)
    RealMatrix mixed(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) mixed(i, j) = Rg(i + 1, r, j + 1, r);
    out.mixed = std::max(out.mixed, relative_diff(mixed, RealMatrix(RealMatrix::Identity(m, m))));

    double diff = 0.0;
    double scale = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            const double lhs = Rg(i + 1, j + 1, k + 1, l + 1);
            const double rhs = RG(i, j, k, l) - 2.0 * W(i, j) * W(k, l) - W(i, k) * W(j, l) + W(i, l) * W(j, k);
            diff += (lhs - rhs) * (lhs - rhs);
            scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
          }
    out.horizontal = std::max(out.horizontal, std::sqrt(diff) / std::max(1.0, scale));

    const RealMatrix ric_g = detail::horizontal_block(Rg.ricci);
    out.ricci = std::max(out.ricci, relative_diff(ric_g, RealMatrix(RG.ricci - 2.0 * RealMatrix::Identity(m, m))));

    const RealMatrix hy = h(y);
    const RealMatrix lhs = detail::horizontal_block(curvature_action(Rg, s.lift_tensor(h)(x)));
    const RealMatrix rhs = curvature_action(RG, hy) - 3.0 * compose_j(W, hy) - W * trace_j(W, hy);
    out.curvature_action = std::max(out.curvature_action, relative_diff(lhs, rhs));
  }
  out.fd_error = scope.max_error();
  return out;
}

/// ⟨E_g h̃, h̃⟩ against (⟨E_G h, h⟩ + 4⟨h, h⟩ + 4⟨h∘J, h⟩)∘π, E = ∇*∇ − 2R̊.
struct EinsteinLiftCheck {
  double residual = 0.0;      // max relative
  double j_excess = -1e300;   // max of ⟨h∘J, h⟩ − ⟨h, h⟩ (≤ 0 expected)
  std::vector<double> lifted;
  std::vector<double> predicted;
  double fd_error = 0.0;
};

inline EinsteinLiftCheck einstein_lift_check(const SasakiBundle& s, const SymTensorField& h, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  EinsteinLiftCheck out;
  const SymTensorField ht = s.lift_tensor(h);
  for (const auto& x : samples) {
    const Point y = s.project(x);
    const RealMatrix hy = h(y);
    const RealMatrix J = s.base.complex_structure(y);
    const double hh = pairing(hy, hy);
    const double hj = pairing(compose_j(J, hy), hy);
    const double lhs = pairing(einstein_operator(s.backend, ht, x), ht(x));
    const double rhs = pairing(einstein_operator(s.base.backend, h, y), hy) + 4.0 * hh + 4.0 * hj;
    out.lifted.push_back(lhs);
    out.predicted.push_back(rhs);
    out.residual = std::max(out.residual, relative_diff(lhs, rhs));
    out.j_excess = std::max(out.j_excess, hj - hh);
  }
  out.fd_error = scope.max_error();
  return out;
}

/// Trace and divergence of h and of its lift; rejects h that is not TT on the base.
struct LiftReport {
  TTReport base;
  TTReport lifted;
  double trace_match = 0.0;       // |tr_g h̃ − tr_G h|
  double divergence_match = 0.0;  // ‖(δ_g h̃)(X̃) − (δ_G h)(X)‖
  double xi_divergence = 0.0;     // |(δ_g h̃)(ξ)|
};

inline LiftReport lift_comparison(const SasakiBundle& s, const SymTensorField& h, const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  LiftReport out;
  const SymTensorField ht = s.lift_tensor(h);
  for (const auto& x : samples) {
    const Point y = s.project(x);
    const RealVector dg = divergence(s.backend, ht, x);
    const RealVector dG = divergence(s.base.backend, h, y);
    out.trace_match = std::max(out.trace_match, std::abs(ht(x).trace() - h(y).trace()));
    out.divergence_match = std::max(out.divergence_match, (dg.tail(dG.size()) - dG).norm());
    out.xi_divergence = std::max(out.xi_divergence, std::abs(dg(SasakiBundle::kReeb)));
  }
  return out;
}

inline LiftReport lift_tt_report(const SasakiBundle& s, const SymTensorField& h, const std::vector<Point>& samples,
                                 double tolerance = 1e-6) {
  std::vector<Point> base_samples;
  for (const auto& x : samples) base_samples.push_back(s.project(x));
  const TTReport base = tt_report(s.base.backend, h, base_samples, tolerance);
  if (!base.traceless || !base.transverse) throw PreconditionError("sasaki: base tensor is not traceless and transverse");
  LiftReport out = lift_comparison(s, h, samples);
  out.base = base;
  out.lifted = tt_report(s.backend, s.lift_tensor(h), samples, tolerance);
  return out;
}

// ---------------------------------------------------------------------------
// Instability certificate for Sasaki–Einstein bundles over a product of two
// Kähler–Einstein factors of complex dimensions p1, p2.

struct InstabilityCertificate {
  int p1 = 0;
  int p2 = 0;
  double base_value = 0.0;    // −2(p1+p2+1)(1/p1 + 1/p2)
  double lifted_value = 0.0;  // −2(p1+p2−1)(1/p1 + 1/p2)
  double h_norm_sq = 0.0;     // 1/(2p1) + 1/(2p2)
  double rayleigh_quotient = 0.0;
  bool unstable = false;

  bool numeric_checked = false;
  int samples = 0;
  double numeric_base_max_error = 0.0;    // relative, ⟨E_G h, h⟩ vs base_value
  double numeric_lifted_max_error = 0.0;  // relative, ⟨E_g h̃, h̃⟩ vs lifted_value
  double numeric_h_norm_error = 0.0;
  double numeric_hj_error = 0.0;           // |⟨h∘J, h⟩ − ⟨h, h⟩|
  double lifted_trace = 0.0;
  double lifted_divergence = 0.0;
  double fd_error = 0.0;
  std::vector<double> lifted_values;

  std::string verdict() const { return unstable ? "UNSTABLE" : "NOT_UNSTABLE"; }
};

inline InstabilityCertificate instability_certificate(int p1, int p2, int samples = 20, std::uint64_t seed = 13) {
  if (p1 < 1 || p2 < 1) throw PreconditionError("certificate: p1 and p2 must be at least 1");
  InstabilityCertificate c;
  c.p1 = p1;
  c.p2 = p2;
  const double inv = 1.0 / p1 + 1.0 / p2;
  c.base_value = -2.0 * (p1 + p2 + 1) * inv;
  c.lifted_value = -2.0 * (p1 + p2 - 1) * inv;
  c.h_norm_sq = 1.0 / (2.0 * p1) + 1.0 / (2.0 * p2);
  c.rayleigh_quotient = c.lifted_value / c.h_norm_sq;
  c.unstable = c.lifted_value < 0.0;
  if (p1 != 1 || p2 != 1) return c;

  fd::ErrorScope scope;
  const SasakiBundle bundle = build_total(build_base("S2xS2", 2.0 * (p1 + p2) + 2.0));
  const SymTensorField h = product_unstable_direction(bundle.base.chart);
  const SymTensorField ht = bundle.lift_tensor(h);
  SplitMix64 rng(seed);
  const std::vector<Point> pts = bundle.sample(samples, rng);
  for (const auto& x : pts) {
    const Point y = bundle.project(x);
    const RealMatrix hy = h(y);
    const double base = pairing(einstein_operator(bundle.base.backend, h, y), hy);
    const double lifted = pairing(einstein_operator(bundle.backend, ht, x), ht(x));
    c.lifted_values.push_back(lifted);
    c.numeric_base_max_error = std::max(c.numeric_base_max_error, std::abs(base - c.base_value) / std::abs(c.base_value));
    c.numeric_lifted_max_error =
        std::max(c.numeric_lifted_max_error, std::abs(lifted - c.lifted_value) / std::abs(c.lifted_value));
    c.numeric_h_norm_error = std::max(c.numeric_h_norm_error, std::abs(pairing(hy, hy) - c.h_norm_sq));
    const RealMatrix J = bundle.base.complex_structure(y);
    c.numeric_hj_error = std::max(c.numeric_hj_error, std::abs(pairing(compose_j(J, hy), hy) - pairing(hy, hy)));
  }
  const TTReport tt = tt_report(bundle.backend, ht, pts, 1e-6);
  c.lifted_trace = tt.max_trace;
  c.lifted_divergence = tt.max_divergence;
  c.numeric_checked = true;
  c.samples = samples;
  c.fd_error = scope.max_error();
  return c;
}

}  // namespace kslab
