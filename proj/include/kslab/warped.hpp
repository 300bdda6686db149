#pragma once

// Warped products (ℝ^{n−1} × ℝ, e^{−4νt}δ + dt²) over a flat fiber and their
// type-I imaginary Killing spinors σ = e^{−νt}ψ with ψ parallel on the fiber.
//
// Chart coordinates are (x_1, …, x_{n−1}, t); the frame is e_a = e^{2νt}∂_a,
// e_n = ∂_t, and the t-direction gamma is the last generator of the total
// representation.
//
// Even fiber dimension: the total representation is the fiber one with
// γ_t = √−1·ω_F adjoined, where ω_F is the fiber volume element, and ψ is
// taken in the +1 eigenspace of ω_F. Odd fiber dimension: the total
// representation is the hat extension of the fiber one, and σ is built from
// (ψ, ψ̂) = (ψ, ψ) on ρ ⊕ (−ρ).

#include <cmath>
#include <string>
#include <vector>

#include "kslab/catalog.hpp"
#include "kslab/spinorfield.hpp"

namespace kslab {

enum class FiberParity { kEven, kOdd };

struct WarpedProduct {
  int fiber_dim = 0;
  double nu = 0.0;
  ChartPatch chart;
  ChartBackend backend;
  CliffordRep rep;

  int dim() const { return fiber_dim + 1; }
  int t_index() const { return fiber_dim; }
  KillingConstant killing_constant() const { return KillingConstant::imaginary(nu); }
};

namespace detail {
inline CliffordRep warped_rep(int fiber_dim) {
  const CliffordRep fiber = build_rep(fiber_dim);
  if (fiber_dim % 2 == 1) return extend_by_hat(fiber);
  std::vector<ComplexMatrix> gs = fiber.gammas();
  gs.push_back(kI * volume_element(fiber).matrix);
  return CliffordRep::from_generators(std::move(gs));
}
}  // namespace detail

inline WarpedProduct build_warped(int fiber_dim, double nu) {
  if (fiber_dim < 1 || fiber_dim + 1 > CliffordRep::kMaxDim) throw PreconditionError("warped: fiber_dim out of range");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw PreconditionError("warped: nu must be positive");
  ChartPatch chart = catalog::warped_flat(fiber_dim, nu);
  ChartBackend backend(chart);
  return WarpedProduct{fiber_dim, nu, std::move(chart), std::move(backend), detail::warped_rep(fiber_dim)};
}

struct TypeOneSpinor {
  ComplexVector psi;  // unit, in the total representation
  FiberParity parity = FiberParity::kEven;
  double nu = 0.0;
  int t_index = 0;
  SpinorField sigma;
};

inline TypeOneSpinor build_type1_spinor(const WarpedProduct& w) {
  const int N = w.rep.spinor_dim();
  ComplexVector psi;
  FiberParity parity;
  if (w.fiber_dim % 2 == 0) {
    parity = FiberParity::kEven;
    const CliffordRep fiber = build_rep(w.fiber_dim);
    const ComplexMatrix proj = volume_element(fiber).projector(+1);
    Eigen::Index best = 0;
    proj.colwise().norm().maxCoeff(&best);
    psi = proj.col(best);
  } else {
    parity = FiberParity::kOdd;
    const int half = N / 2;
    psi = ComplexVector::Zero(N);
    psi(0) = 1.0;
    psi(half) = 1.0;
  }
  if (psi.norm() < 1e-8) throw NumericalError("warped: parallel spinor eigenspace is empty");
  psi.normalize();
  if (t_action_spinor_residual(w.rep, psi, w.t_index()) > 1e-12)
    throw NumericalError("warped: embedded spinor is not a +√−1 eigenvector of the t-direction");
  const double nu = w.nu;
  const int t = w.t_index();
  SpinorField sigma{[psi, nu, t](const Point& x) { return ComplexVector(std::exp(-nu * x(t)) * psi); }};
  return TypeOneSpinor{psi, parity, nu, t, std::move(sigma)};
}

/// Length function f = ⟨σ, σ⟩.
inline double length_function(const SpinorField& sigma, const Point& x) { return sigma(x).squaredNorm(); }

/// max over samples of |f − e^{−2νt}|.
inline double length_residual(const TypeOneSpinor& s, const std::vector<Point>& samples) {
  double worst = 0.0;
  for (const auto& x : samples)
    worst = std::max(worst, std::abs(length_function(s.sigma, x) - std::exp(-2.0 * s.nu * x(s.t_index))));
  return worst;
}

struct QSigma {
  double mean = 0.0;
  double spread = 0.0;  // max − min
  double fd_error = 0.0;
  std::vector<double> values;
};

/// q_σ = f² − |∇f|²/(4ν²) at each sample.
template <GeometryBackend B>
QSigma q_sigma(const B& backend, const SpinorField& sigma, double nu, const std::vector<Point>& samples) {
  if (!(nu > 0.0)) throw PreconditionError("q_sigma: nu must be positive");
  if (samples.empty()) throw PreconditionError("q_sigma: no samples");
  fd::ErrorScope scope;
  QSigma out;
  const std::function<double(const Point&)> f = [&sigma](const Point& y) { return length_function(sigma, y); };
  for (const auto& x : samples) {
    double grad_sq = 0.0;
    for (int k = 0; k < backend.dim(); ++k) {
      const double d = backend.derivative(k, x, f);
      grad_sq += d * d;
    }
    const double fx = f(x);
    out.values.push_back(fx * fx - grad_sq / (4.0 * nu * nu));
  }
  const auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
  out.spread = *hi - *lo;
  double sum = 0.0;
  for (double v : out.values) sum += v;
  out.mean = sum / static_cast<double>(out.values.size());
  out.fd_error = scope.max_error();
  return out;
}

/// max over samples and i, j of |Re⟨γ_i σ, γ_j σ⟩ − δ_ij f|.
inline double orthogonality_check(const CliffordRep& rep, const SpinorField& sigma, const std::vector<Point>& samples) {
  double worst = 0.0;
  for (const auto& x : samples) {
    const ComplexVector s = sigma(x);
    const double f = s.squaredNorm();
    for (int i = 0; i < rep.dim(); ++i)
      for (int j = 0; j < rep.dim(); ++j) {
        const double v = inner(ComplexVector(rep.gamma(i) * s), ComplexVector(rep.gamma(j) * s)).real();
        worst = std::max(worst, std::abs(v - (i == j ? f : 0.0)));
      }
  }
  return worst;
}

/// max over samples of ‖∂_t·σ − √−1σ‖.
inline double t_action_residual(const CliffordRep& rep, const TypeOneSpinor& s, const std::vector<Point>& samples) {
  double worst = 0.0;
  for (const auto& x : samples) worst = std::max(worst, t_action_spinor_residual(rep, s.sigma(x), s.t_index));
  return worst;
}

}  // namespace kslab
