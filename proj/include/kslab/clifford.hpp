#pragma once

// Complex Clifford algebra representations with e_i e_j + e_j e_i = -2 delta_ij.

#include <vector>

#include "kslab/types.hpp"

namespace kslab {

/// Gamma-matrix realization of Cl(n) (x) C on C^N, N = 2^floor(n/2).
/// Every generator is anti-Hermitian and unitary.
class CliffordRep {
 public:
  static constexpr int kMaxDim = 12;

  /// Validates user-supplied generators. Generators obeying the opposite
  /// sign convention (e_i^2 = +1) are rejected.
  static CliffordRep from_generators(std::vector<ComplexMatrix> gammas, double tol = 1e-12) {
    if (gammas.empty()) throw PreconditionError("clifford: no generators");
    const auto size = gammas.front().rows();
    for (const auto& g : gammas) {
      if (g.rows() != size || g.cols() != size)
        throw PreconditionError("clifford: generators must be square and equally sized");
    }
    CliffordRep rep(std::move(gammas));
    const ComplexMatrix sq = rep.gamma(0) * rep.gamma(0);
    if ((sq - ComplexMatrix::Identity(size, size)).cwiseAbs().maxCoeff() < tol)
      throw PreconditionError("clifford: generators square to +1; convention e.e = -|e|^2 required");
    if (rep.relation_residual() > tol)
      throw PreconditionError("clifford: generators violate e_i e_j + e_j e_i = -2 delta_ij");
    return rep;
  }

  int dim() const { return static_cast<int>(gammas_.size()); }
  int spinor_dim() const { return static_cast<int>(gammas_.front().rows()); }
  const ComplexMatrix& gamma(int i) const { return gammas_.at(static_cast<std::size_t>(i)); }
  const std::vector<ComplexMatrix>& gammas() const { return gammas_; }

  /// max over i, j of ‖γ_i γ_j + γ_j γ_i + 2 δ_ij Id‖.
  double relation_residual() const {
    const int n = dim();
    const auto id = ComplexMatrix::Identity(spinor_dim(), spinor_dim());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ComplexMatrix r = gamma(i) * gamma(j) + gamma(j) * gamma(i);
        if (i == j) r += 2.0 * id;
        worst = std::max(worst, max_abs(r));
      }
    return worst;
  }

  /// max over i of ‖γ_i^† + γ_i‖ and ‖γ_i^† γ_i − Id‖.
  double unitarity_residual() const {
    const auto id = ComplexMatrix::Identity(spinor_dim(), spinor_dim());
    double worst = 0.0;
    for (const auto& g : gammas_) {
      worst = std::max(worst, max_abs(ComplexMatrix(g.adjoint() + g)));
      worst = std::max(worst, max_abs(ComplexMatrix(g.adjoint() * g - id)));
    }
    return worst;
  }

  /// Σ_i v_i γ_i.
  ComplexMatrix clifford_matrix(const RealVector& v) const {
    if (v.size() != dim()) throw PreconditionError("clifford: vector dimension mismatch");
    ComplexMatrix m = ComplexMatrix::Zero(spinor_dim(), spinor_dim());
    for (int i = 0; i < dim(); ++i) m += v(i) * gamma(i);
    return m;
  }

 private:
  explicit CliffordRep(std::vector<ComplexMatrix> gammas) : gammas_(std::move(gammas)) {}

  friend CliffordRep build_rep(int n);
  friend CliffordRep extend_by_hat(const CliffordRep& odd);

  std::vector<ComplexMatrix> gammas_;
};

namespace detail {

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexMatrix pauli(int which) {
  ComplexMatrix s(2, 2);
  switch (which) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline ComplexMatrix ordered_product(const std::vector<ComplexMatrix>& gs, std::size_t count) {
  ComplexMatrix p = ComplexMatrix::Identity(gs.front().rows(), gs.front().cols());
  for (std::size_t i = 0; i < count; ++i) p = p * gs[i];
  return p;
}

inline Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

/// Recursive doubling: Cl(2m+2) generators are γ_i ⊗ σ3 plus Id ⊗ iσ1 and
/// Id ⊗ iσ2; an odd dimension 2m+1 appends i^{(m+1) mod 2} γ_1⋯γ_{2m}.
/// Entries are in {0, ±1, ±i}. For n = 3 this gives γ_1γ_2γ_3 = −Id.
inline CliffordRep build_rep(int n) {
  if (n < 1 || n > CliffordRep::kMaxDim)
    throw PreconditionError("clifford: dimension must lie in [1, 12]");
  const int m = n / 2;
  std::vector<ComplexMatrix> gs;
  for (int level = 0; level < m; ++level) {
    const auto size = gs.empty() ? Eigen::Index{1} : gs.front().rows();
    for (auto& g : gs) g = detail::kron(g, detail::pauli(3));
    const ComplexMatrix id = ComplexMatrix::Identity(size, size);
    gs.push_back(detail::kron(id, kI * detail::pauli(1)));
    gs.push_back(detail::kron(id, kI * detail::pauli(2)));
  }
  if (n % 2 == 1) {
    if (gs.empty()) {
      gs.push_back(ComplexMatrix::Constant(1, 1, kI));
    } else {
      const ComplexMatrix p = detail::ordered_product(gs, gs.size());
      gs.push_back(detail::i_power((m + 1) % 2) * p);
    }
  }
  return CliffordRep(std::move(gs));
}

/// γ_i s for i a frame index.
inline ComplexVector clifford_unit(const CliffordRep& rep, int i, const ComplexVector& s) {
  if (s.size() != rep.spinor_dim()) throw PreconditionError("clifford: spinor dimension mismatch");
  return rep.gamma(i) * s;
}

/// (Σ v_i γ_i) s.
inline ComplexVector clifford_mult(const CliffordRep& rep, const RealVector& v, const ComplexVector& s) {
  if (s.size() != rep.spinor_dim()) throw PreconditionError("clifford: spinor dimension mismatch");
  return rep.clifford_matrix(v) * s;
}

/// ‖Σ_l γ_l γ_i γ_l s − (n − 2) γ_i s‖.
inline double sandwich_identity_check(const CliffordRep& rep, const ComplexVector& s, int i) {
  if (i < 0 || i >= rep.dim()) throw PreconditionError("clifford: index out of range");
  if (s.size() != rep.spinor_dim()) throw PreconditionError("clifford: spinor dimension mismatch");
  ComplexVector lhs = ComplexVector::Zero(s.size());
  const ComplexVector gi_s = rep.gamma(i) * s;
  for (int l = 0; l < rep.dim(); ++l) lhs += rep.gamma(l) * (rep.gamma(i) * (rep.gamma(l) * s));
  return (lhs - static_cast<double>(rep.dim() - 2) * gi_s).norm();
}

/// Complex volume element i^p γ_1⋯γ_n normalized so that ω² = Id.
struct VolumeElement {
  ComplexMatrix matrix;
  int parity_exponent = 0;

  ComplexMatrix projector(int sign) const {
    const auto id = ComplexMatrix::Identity(matrix.rows(), matrix.cols());
    return 0.5 * (id + static_cast<double>(sign) * matrix);
  }
};

inline VolumeElement volume_element(const CliffordRep& rep) {
  const int n = rep.dim();
  VolumeElement vol;
  vol.parity_exponent = (n + 1) / 2;
  vol.matrix = detail::i_power(vol.parity_exponent) *
               detail::ordered_product(rep.gammas(), rep.gammas().size());
  return vol;
}

/// For odd n there is no linear map on the irreducible module anticommuting
/// with every γ_i (the volume element is central), so the isomorphism between
/// the two inequivalent modules ρ and ρ' = −ρ is realized on ρ ⊕ ρ'. The hat
/// map sends (s, s') to (s', s); it is an involution and satisfies
/// ĥ(Γ_i x) = −Γ_i ĥ(x) for the doubled generators Γ_i = γ_i ⊕ (−γ_i).
struct HatIsomorphism {
  ComplexMatrix involution;               // 2N × 2N block swap
  std::vector<ComplexMatrix> doubled;     // Γ_i = diag(γ_i, −γ_i)

  ComplexVector apply(const ComplexVector& x) const { return involution * x; }

  /// max over i of ‖ĥ Γ_i + Γ_i ĥ‖.
  double intertwining_residual() const {
    double worst = 0.0;
    for (const auto& g : doubled)
      worst = std::max(worst, max_abs(ComplexMatrix(involution * g + g * involution)));
    return worst;
  }
};

inline HatIsomorphism hat_isomorphism(const CliffordRep& rep) {
  if (rep.dim() % 2 == 0) throw PreconditionError("clifford: hat isomorphism needs odd dimension");
  const int N = rep.spinor_dim();
  HatIsomorphism hat;
  hat.involution = ComplexMatrix::Zero(2 * N, 2 * N);
  hat.involution.topRightCorner(N, N).setIdentity();
  hat.involution.bottomLeftCorner(N, N).setIdentity();
  for (const auto& g : rep.gammas()) {
    ComplexMatrix d = ComplexMatrix::Zero(2 * N, 2 * N);
    d.topLeftCorner(N, N) = g;
    d.bottomRightCorner(N, N) = -g;
    hat.doubled.push_back(std::move(d));
  }
  return hat;
}

/// Cl(n+1) representation for odd n built from the hat map: the first n
/// generators act as γ_i ⊕ (−γ_i), the last one is √−1 ĥ. The +√−1
/// eigenspace of the last generator is {(ψ, ψ̂)}.
inline CliffordRep extend_by_hat(const CliffordRep& odd) {
  const HatIsomorphism hat = hat_isomorphism(odd);
  std::vector<ComplexMatrix> gs = hat.doubled;
  gs.push_back(kI * hat.involution);
  return CliffordRep(std::move(gs));
}

}  // namespace kslab
