#pragma once

// Spinor fields, the spin connection, Killing spinors, the map
// Φ(h) = h_ij e_i·σ ⊗ e^j and the twisted Dirac operator on 𝒮 ⊗ T*M.
//
// Spinor components are taken in the spin frame lifted from the backend's
// orthonormal frame. The spin connection is
//   ∇^S_{e_k} σ = e_k(σ) + ¼ Σ_{ij} Γ_{kij} γ_i γ_j σ.
// A spinor-valued 1-form is stored as an N × n matrix whose column j is the
// e^j component. Its inner product is Hermitian on the spinor factor and
// Euclidean on the form factor.

#include <algorithm>
#include <functional>
#include <vector>

#include "kslab/clifford.hpp"
#include "kslab/tensorfield.hpp"

namespace kslab {

struct SpinorField {
  std::function<ComplexVector(const Point&)> value;

  ComplexVector operator()(const Point& x) const { return value(x); }
};

struct SpinorOneFormField {
  std::function<ComplexMatrix(const Point&)> value;

  ComplexMatrix operator()(const Point& x) const { return value(x); }
};

/// Killing constant μ; purely real or purely imaginary.
class KillingConstant {
 public:
  static KillingConstant real(double mu) { return KillingConstant(Complex(mu, 0.0)); }
  static KillingConstant imaginary(double nu) { return KillingConstant(Complex(0.0, nu)); }

  explicit KillingConstant(Complex mu) : value_(mu) {
    if (mu.real() != 0.0 && mu.imag() != 0.0)
      throw PreconditionError("killing constant must be real or purely imaginary");
  }

  Complex value() const { return value_; }
  bool is_imaginary() const { return value_.imag() != 0.0; }
  /// μ², which is real in both cases.
  double squared() const { return (value_ * value_).real(); }

 private:
  Complex value_;
};

/// Σ_a Σ_j A_aj conj(B_aj).
inline Complex inner(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.array() * b.conjugate().array()).sum(); }
inline Complex inner(const ComplexVector& a, const ComplexVector& b) { return (a.array() * b.conjugate().array()).sum(); }

/// ¼ Σ_ij Γ_{kij} γ_i γ_j.
inline ComplexMatrix spin_connection_matrix(const FrameConnection& conn, const CliffordRep& rep, int k) {
  const int n = conn.dim;
  ComplexMatrix m = ComplexMatrix::Zero(rep.spinor_dim(), rep.spinor_dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = conn(k, i, j);
      if (w != 0.0) m += (0.25 * w) * (rep.gamma(i) * rep.gamma(j));
    }
  return m;
}

namespace detail {
template <GeometryBackend B>
void require_matching(const B& backend, const CliffordRep& rep) {
  if (backend.dim() != rep.dim()) throw PreconditionError("spinor: Clifford representation does not match backend dimension");
}
}  // namespace detail

/// ∇^S_{e_k} σ at x.
template <GeometryBackend B>
ComplexVector spin_covariant_derivative(const B& backend, const CliffordRep& rep, const SpinorField& sigma, int k,
                                        const Point& x) {
  detail::require_matching(backend, rep);
  const FrameConnection conn = backend.connection(x);
  ComplexVector d = backend.derivative(k, x, sigma.value);
  return d + spin_connection_matrix(conn, rep, k) * sigma(x);
}

/// max over samples and frame directions of ‖∇^S_{e_k} σ − μ e_k·σ‖.
template <GeometryBackend B>
CheckResult killing_residual(const B& backend, const CliffordRep& rep, const SpinorField& sigma, KillingConstant mu,
                             const std::vector<Point>& samples) {
  fd::ErrorScope scope;
  CheckResult out;
  for (const auto& x : samples) {
    const ComplexVector s = sigma(x);
    for (int k = 0; k < backend.dim(); ++k) {
      const ComplexVector r = spin_covariant_derivative(backend, rep, sigma, k, x) - mu.value() * (rep.gamma(k) * s);
      out.residual = std::max(out.residual, r.norm());
    }
  }
  out.fd_error = scope.max_error();
  return out;
}

/// Orthonormal basis of constant-component Killing spinors on a homogeneous
/// backend: the common kernel of ¼Σ Γ_{kij}γ_iγ_j − μγ_k over k.
inline ComplexMatrix constant_killing_spinors(const HomogeneousBackend& backend, const CliffordRep& rep, KillingConstant mu,
                                              double tol = 1e-10) {
  detail::require_matching(backend, rep);
  const int n = backend.dim();
  const int N = rep.spinor_dim();
  const FrameConnection conn = backend.connection(Point::Zero(n));
  ComplexMatrix stacked(n * N, N);
  for (int k = 0; k < n; ++k) stacked.block(k * N, 0, N, N) = spin_connection_matrix(conn, rep, k) - mu.value() * rep.gamma(k);
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<int> null_cols;
  for (int c = 0; c < N; ++c)
    if (sv(c) <= tol) null_cols.push_back(c);
  ComplexMatrix basis(N, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t c = 0; c < null_cols.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(null_cols[c]);
  return basis;
}

/// Both sides of R^S_{e_i e_j}σ = ¼ R(e_i, e_j, e_a, e_b) e_a e_b·σ.
struct SpinorCurvatureCheck {
  ComplexVector lhs;
  ComplexVector rhs;
  double residual = 0.0;
};

template <GeometryBackend B>
SpinorCurvatureCheck spinor_curvature(const B& backend, const CliffordRep& rep, const SpinorField& sigma, int i, int j,
                                      const Point& x) {
  detail::require_matching(backend, rep);
  const int n = backend.dim();
  auto nabla = [&](int k) {
    return SpinorField{[&backend, &rep, &sigma, k](const Point& y) {
      return spin_covariant_derivative(backend, rep, sigma, k, y);
    }};
  };
  const FrameConnection conn = backend.connection(x);
  SpinorCurvatureCheck out;
  // R_{XY} = −∇_X∇_Y + ∇_Y∇_X + ∇_{[X,Y]}, with [e_i, e_j] = c^k_{ij} e_k.
  out.lhs = -spin_covariant_derivative(backend, rep, nabla(j), i, x) + spin_covariant_derivative(backend, rep, nabla(i), j, x);
  for (int k = 0; k < n; ++k) {
    const double c = conn.bracket(i, j, k);
    if (c != 0.0) out.lhs += c * spin_covariant_derivative(backend, rep, sigma, k, x);
  }
  const CurvatureData R = backend.curvature(x);
  const ComplexVector s = sigma(x);
  out.rhs = ComplexVector::Zero(s.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.rhs += (0.25 * R(i, j, a, b)) * (rep.gamma(a) * (rep.gamma(b) * s));
  out.residual = (out.lhs - out.rhs).norm();
  return out;
}

/// Φ(h)^j = Σ_i h_ij γ_i σ.
inline ComplexMatrix phi_map(const CliffordRep& rep, const RealMatrix& h, const ComplexVector& sigma) {
  const int n = rep.dim();
  if (h.rows() != n || h.cols() != n) throw PreconditionError("phi: tensor dimension mismatch");
  ComplexMatrix gs(rep.spinor_dim(), n);
  for (int i = 0; i < n; ++i) gs.col(i) = rep.gamma(i) * sigma;
  return gs * h.cast<Complex>();
}

inline SpinorOneFormField phi_field(const CliffordRep& rep, const SymTensorField& h, const SpinorField& sigma) {
  return SpinorOneFormField{[&rep, h, sigma](const Point& y) { return phi_map(rep, h(y), sigma(y)); }};
}

/// |Re⟨Φ(h), Φ(h̃)⟩ − ⟨h, h̃⟩ f| with f = ⟨σ, σ⟩.
inline double re_inner_phi_residual(const CliffordRep& rep, const RealMatrix& h, const RealMatrix& h2, const ComplexVector& sigma) {
  const double lhs = inner(phi_map(rep, h, sigma), phi_map(rep, h2, sigma)).real();
  const double f = sigma.squaredNorm();
  return std::abs(lhs - pairing(h, h2) * f);
}

/// (∇_{e_k}Ψ)^j = ∇^S_{e_k}Ψ^j − Σ_l Γ_{kjl} Ψ^l.
template <GeometryBackend B>
ComplexMatrix one_form_covariant_derivative(const B& backend, const CliffordRep& rep, const SpinorOneFormField& psi, int k,
                                            const Point& x) {
  const int n = backend.dim();
  const FrameConnection conn = backend.connection(x);
  const ComplexMatrix value = psi(x);
  ComplexMatrix out = backend.derivative(k, x, psi.value);
  out += spin_connection_matrix(conn, rep, k) * value;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      const double w = conn(k, j, l);
      if (w != 0.0) out.col(j) -= w * value.col(l);
    }
  return out;
}

/// (DΨ)^j = Σ_k γ_k (∇_{e_k}Ψ)^j.
template <GeometryBackend B>
ComplexMatrix twisted_dirac(const B& backend, const CliffordRep& rep, const SpinorOneFormField& psi, const Point& x) {
  detail::require_matching(backend, rep);
  ComplexMatrix out = ComplexMatrix::Zero(rep.spinor_dim(), backend.dim());
  for (int k = 0; k < backend.dim(); ++k) out += rep.gamma(k) * one_form_covariant_derivative(backend, rep, psi, k, x);
  return out;
}

template <GeometryBackend B>
SpinorOneFormField dirac_field(const B& backend, const CliffordRep& rep, SpinorOneFormField psi) {
  return SpinorOneFormField{[&backend, &rep, psi = std::move(psi)](const Point& y) { return twisted_dirac(backend, rep, psi, y); }};
}

/// Both sides of the Bochner formula
///   D*DΦ(h) = Φ((∇*∇ − 2R̊)h) + n(n−2)μ²Φ(h) + 2μDΦ(h)
///             + 4μ²(tr h) e_j·σ⊗e^j − 4μ(δh)_j σ⊗e^j,
/// with D*D evaluated as D∘D and (δh)_j = −Σ_i(∇_{e_i}h)_ij entering as a scalar.
struct BochnerCheck {
  ComplexMatrix lhs;
  ComplexMatrix rhs;
  double residual = 0.0;
  double relative = 0.0;
};

template <GeometryBackend B>
BochnerCheck bochner_check(const B& backend, const CliffordRep& rep, const SymTensorField& h, const SpinorField& sigma,
                           KillingConstant mu, const Point& x) {
  detail::require_matching(backend, rep);
  const int n = backend.dim();
  const Complex m = mu.value();
  const SpinorOneFormField phi = phi_field(rep, h, sigma);
  const SpinorOneFormField d_phi = dirac_field(backend, rep, phi);
  BochnerCheck out;
  out.lhs = twisted_dirac(backend, rep, d_phi, x);

  const ComplexVector s = sigma(x);
  const RealMatrix hx = h(x);
  const RealMatrix einstein = einstein_operator(backend, h, x);
  const RealVector div = divergence(backend, h, x);
  ComplexMatrix div_term(rep.spinor_dim(), n);
  for (int j = 0; j < n; ++j) div_term.col(j) = div(j) * s;
  out.rhs = phi_map(rep, einstein, s) + (static_cast<double>(n * (n - 2)) * m * m) * phi_map(rep, hx, s) +
            (2.0 * m) * d_phi(x) + (4.0 * m * m * hx.trace()) * phi_map(rep, RealMatrix::Identity(n, n), s) -
            (4.0 * m) * div_term;
  out.residual = max_abs(ComplexMatrix(out.lhs - out.rhs));
  out.relative = relative_diff(out.lhs, out.rhs);
  return out;
}

/// | ‖γ_t·Φ(h)‖ − ‖Φ(h)‖ | where γ_t is Clifford multiplication by e_t.
inline double t_action_norm_residual(const CliffordRep& rep, const RealMatrix& h, const ComplexVector& sigma, int t_index) {
  const ComplexMatrix phi = phi_map(rep, h, sigma);
  const ComplexMatrix acted = rep.gamma(t_index) * phi;
  return std::abs(acted.norm() - phi.norm());
}

/// ‖e_t·σ − √−1 σ‖.
inline double t_action_spinor_residual(const CliffordRep& rep, const ComplexVector& sigma, int t_index) {
  return (rep.gamma(t_index) * sigma - kI * sigma).norm();
}

/// Pointwise Cauchy steps behind the imaginary-Killing estimate:
///   Re⟨DΦ, 2ν ∂_t·Φ⟩ + (‖DΦ‖² + 4ν²‖∂_t·Φ‖²)/2 ≥ 0
///   Re⟨−2μDΦ, Φ⟩/f + ‖DΦ‖²/(2f) + 2ν²⟨h,h⟩ ≥ 0
/// Returns the smaller of the two margins (nonnegative when both hold).
inline double cauchy_margin(const CliffordRep& rep, const ComplexMatrix& d_phi, const ComplexMatrix& phi, KillingConstant mu,
                            double nu, double f, double h_norm_sq, int t_index) {
  const ComplexMatrix t_phi = rep.gamma(t_index) * phi;
  const double first = inner(d_phi, (2.0 * nu) * t_phi).real() + 0.5 * (d_phi.squaredNorm() + 4.0 * nu * nu * t_phi.squaredNorm());
  const double second = inner(ComplexMatrix((-2.0 * mu.value()) * d_phi), phi).real() / f + 0.5 * d_phi.squaredNorm() / f +
                        2.0 * nu * nu * h_norm_sq;
  return std::min(first, second);
}

// ---------------------------------------------------------------------------
// Real Killing spinors on homogeneous backends.

struct RealKillingCheck {
  double residual = 0.0;        // |⟨Eh, h⟩ − (⟨DΦ,DΦ⟩ − 2μ Re⟨DΦ,Φ⟩ − n(n−2)μ²⟨h,h⟩)|
  double imaginary_part = 0.0;  // |Im μ⟨DΦ, Φ⟩|
};

namespace detail {
inline void require_unit_constant_tt(const HomogeneousBackend& backend, const RealMatrix& h, const ComplexVector& sigma,
                                     bool require_tt) {
  if (std::abs(sigma.norm() - 1.0) > 1e-12) throw PreconditionError("real killing: spinor must have unit length");
  if (require_tt) {
    const SymTensorField field = constant_field(h);
    const Point x = Point::Zero(backend.dim());
    if (std::abs(h.trace()) > 1e-10 || max_abs(divergence(backend, field, x)) > 1e-10)
      throw PreconditionError("real killing: h must be traceless and transverse");
  }
}
}  // namespace detail

inline RealKillingCheck real_killing_identity(const HomogeneousBackend& backend, const CliffordRep& rep, const RealMatrix& h,
                                              const ComplexVector& sigma, KillingConstant mu) {
  if (mu.is_imaginary()) throw PreconditionError("real killing: μ must be real");
  detail::require_unit_constant_tt(backend, h, sigma, true);
  const int n = backend.dim();
  const double m = mu.value().real();
  const Point x = Point::Zero(n);
  const SymTensorField field = constant_field(h);
  const SpinorField s{[sigma](const Point&) { return sigma; }};
  if (killing_residual(backend, rep, s, mu, {x}).residual > 1e-9)
    throw PreconditionError("real killing: spinor is not Killing for the given constant");
  const SpinorOneFormField phi = phi_field(rep, field, s);
  const ComplexMatrix d_phi = twisted_dirac(backend, rep, phi, x);
  const ComplexMatrix phi_x = phi(x);
  const double lhs = pairing(einstein_operator(backend, field, x), h);
  const Complex cross = inner(d_phi, phi_x);
  const double rhs = d_phi.squaredNorm() - 2.0 * m * cross.real() - n * (n - 2) * m * m * pairing(h, h);
  return {std::abs(lhs - rhs), std::abs((m * cross).imag())};
}

/// Re⟨(D − μ)²Φ(h), Φ(h)⟩ − (n−1)²μ²⟨h,h⟩ for each h, sorted ascending.
inline std::vector<double> spectral_gap_report(const HomogeneousBackend& backend, const CliffordRep& rep,
                                               const ComplexVector& sigma, KillingConstant mu,
                                               const std::vector<RealMatrix>& ensemble) {
  if (mu.is_imaginary()) throw PreconditionError("spectral gap: μ must be real");
  const int n = backend.dim();
  const double m = mu.value().real();
  const Point x = Point::Zero(n);
  const SpinorField s{[sigma](const Point&) { return sigma; }};
  std::vector<double> gaps;
  gaps.reserve(ensemble.size());
  for (const auto& h : ensemble) {
    const SpinorOneFormField phi = phi_field(rep, constant_field(h), s);
    const SpinorOneFormField shifted{[&backend, &rep, phi, m](const Point& y) {
      return ComplexMatrix(twisted_dirac(backend, rep, phi, y) - m * phi(y));
    }};
    const ComplexMatrix twice = twisted_dirac(backend, rep, shifted, x) - m * shifted(x);
    gaps.push_back(inner(twice, phi(x)).real() - (n - 1) * (n - 1) * m * m * pairing(h, h));
  }
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

}  // namespace kslab
