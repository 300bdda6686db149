#pragma once

// Operation registry: each test-matrix op maps a space and an entry to a
// residual, an FD error estimate and named auxiliary values.
//
// Random draws for an entry come from SplitMix64(entry.seed) in this order:
// sample points first, then fields (and spinors, where random) in ensemble
// order.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "kslab/clifford.hpp"
#include "kslab/harness/spaces.hpp"
#include "kslab/sasaki.hpp"
#include "kslab/spinorfield.hpp"
#include "kslab/warped.hpp"

namespace kslab::harness {

struct OpOutcome {
  double residual = 0.0;
  double fd_error = 0.0;
  std::map<std::string, double> values;

  void absorb(double r, double fd = 0.0) {
    residual = std::max(residual, r);
    fd_error = std::max(fd_error, fd);
  }
};

struct OpContext {
  const Space* space = nullptr;  // null for space-free ops
  const TestMatrixEntry& entry;
  SplitMix64 rng;

  const Space& need_space() const {
    if (space == nullptr) throw PreconditionError(entry.op + ": entry needs a space");
    return *space;
  }
  std::vector<Point> samples() {
    return need_space().with_backend([this](const auto& b) { return b.sample(entry.samples, rng); });
  }
  std::string field_family(const std::string& fallback) const { return entry.field.empty() ? fallback : entry.field; }
};

using OpFn = std::function<OpOutcome(OpContext&)>;

struct OpInfo {
  std::string description;
  OpFn run;
};

namespace ops_detail {

/// Killing spinor, representation and constants for the spinor-carrying spaces.
struct SpinorSetup {
  CliffordRep rep;
  SpinorField sigma;
  KillingConstant natural;  // constant the spinor was built for
  KillingConstant tested;   // constant used in the check (params mu_re / mu_im)
  int t_index = -1;
  double nu = 0.0;
};

inline KillingConstant tested_constant(const TestMatrixEntry& e, KillingConstant natural) {
  if (e.params.contains("mu_re")) return KillingConstant::real(e.params.at("mu_re").get<double>());
  if (e.params.contains("mu_im")) return KillingConstant::imaginary(e.params.at("mu_im").get<double>());
  return natural;
}

inline SpinorSetup spinor_setup(const OpContext& ctx) {
  const Space& s = ctx.need_space();
  if (const auto* h = std::get_if<HomogeneousBackend>(&s.impl)) {
    const double r = detail::num(s.spec, "radius", 1.0);
    const KillingConstant natural = KillingConstant::real(ctx.entry.param("spinor_mu", 0.5 / r));
    CliffordRep rep = build_rep(h->dim());
    const ComplexMatrix basis = constant_killing_spinors(*h, rep, natural);
    if (basis.cols() == 0) throw NumericalError("no constant Killing spinors for the requested constant");
    const ComplexVector psi = basis.col(0).normalized();
    return {std::move(rep), SpinorField{[psi](const Point&) { return psi; }}, natural, tested_constant(ctx.entry, natural)};
  }
  if (const auto* w = std::get_if<WarpedProduct>(&s.impl)) {
    TypeOneSpinor t = build_type1_spinor(*w);
    const KillingConstant natural = w->killing_constant();
    return {w->rep, std::move(t.sigma), natural, tested_constant(ctx.entry, natural), t.t_index, w->nu};
  }
  throw PreconditionError(ctx.entry.op + ": space '" + s.id + "' carries no Killing spinor");
}

inline const WarpedProduct& warped(const OpContext& ctx) { return ctx.need_space().as<WarpedProduct>(ctx.entry.op); }
inline const SasakiBundle& sasaki(const OpContext& ctx) { return ctx.need_space().as<SasakiBundle>(ctx.entry.op); }
inline const HomogeneousBackend& homogeneous(const OpContext& ctx) {
  return ctx.need_space().as<HomogeneousBackend>(ctx.entry.op);
}

/// Tensor fields on the space itself (or on the base, for Sasaki spaces).
inline std::vector<SymTensorField> fields(OpContext& ctx, const std::string& fallback, int default_count, bool on_base) {
  const Space& s = ctx.need_space();
  const int count = ctx.entry.param_int("ensemble", default_count);
  const ChartPatch* chart = nullptr;
  int n = s.dim();
  if (const auto* b = std::get_if<SasakiBundle>(&s.impl); b && on_base) {
    chart = &b->base.chart;
    n = b->base.dim();
  } else if (const auto* c = std::get_if<ChartBackend>(&s.impl)) {
    chart = &c->chart();
  }
  std::vector<SymTensorField> out;
  for (int i = 0; i < count; ++i) out.push_back(make_field(ctx.field_family(fallback), n, n, ctx.rng, chart));
  return out;
}

inline double max_gamma_norm_defect(const CliffordRep& rep, const ComplexVector& s) {
  double worst = 0.0;
  for (int i = 0; i < rep.dim(); ++i) worst = std::max(worst, std::abs((rep.gamma(i) * s).norm() - s.norm()));
  return worst;
}

}  // namespace ops_detail

inline const std::map<std::string, OpInfo>& op_registry() {
  using namespace ops_detail;
  static const std::map<std::string, OpInfo> registry = {
      // ---- Clifford algebra (space-free)
      {"clifford_relations",
       {"γ_iγ_j + γ_jγ_i = −2δ_ij and unitarity for n in [n_min, n_max]",
        [](OpContext& ctx) {
          OpOutcome out;
          for (int n = ctx.entry.param_int("n_min", 1); n <= ctx.entry.param_int("n_max", 9); ++n) {
            const CliffordRep rep = build_rep(n);
            out.absorb(std::max(rep.relation_residual(), rep.unitarity_residual()));
            const VolumeElement vol = volume_element(rep);
            const auto id = ComplexMatrix::Identity(rep.spinor_dim(), rep.spinor_dim());
            out.absorb(max_abs(ComplexMatrix(vol.matrix * vol.matrix - id)));
          }
          return out;
        }}},
      {"sandwich_identity",
       {"Σ_l γ_l γ_i γ_l = (n−2) γ_i on random spinors",
        [](OpContext& ctx) {
          OpOutcome out;
          for (int n = ctx.entry.param_int("n_min", 1); n <= ctx.entry.param_int("n_max", 9); ++n) {
            const CliffordRep rep = build_rep(n);
            const ComplexVector s = ctx.rng.complex_normal_vector(rep.spinor_dim());
            for (int i = 0; i < n; ++i) out.absorb(sandwich_identity_check(rep, s, i) / s.norm());
          }
          return out;
        }}},
      {"hat_isomorphism",
       {"hat involution anticommutes with the doubled generators (odd n)",
        [](OpContext& ctx) {
          OpOutcome out;
          for (int n = ctx.entry.param_int("n_min", 1); n <= ctx.entry.param_int("n_max", 9); n += 1) {
            if (n % 2 == 0) continue;
            const CliffordRep rep = build_rep(n);
            out.absorb(hat_isomorphism(rep).intertwining_residual());
            out.absorb(extend_by_hat(rep).relation_residual());
          }
          return out;
        }}},

      // ---- Geometry
      {"constant_curvature",
       {"R_ijkl = κ(δ_ikδ_jl − δ_ilδ_jk) at samples (param kappa)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const double kappa = ctx.entry.param("kappa", 1.0);
          const CheckResult r = ctx.need_space().with_backend([&](const auto& b) { return verify_constant_curvature(b, pts, kappa); });
          return OpOutcome{r.residual, r.fd_error, {}};
        }}},
      {"einstein",
       {"Ric = k g at samples (param k)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const double k = ctx.entry.param("k", 0.0);
          const CheckResult r = ctx.need_space().with_backend([&](const auto& b) { return verify_einstein(b, pts, k); });
          return OpOutcome{r.residual, r.fd_error, {}};
        }}},
      {"curvature_symmetries",
       {"antisymmetries, pair symmetry and first Bianchi identity",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const CheckResult r = ctx.need_space().with_backend([&](const auto& b) { return verify_curvature_symmetries(b, pts); });
          return OpOutcome{r.residual, r.fd_error, {}};
        }}},
      {"killing_scalar",
       {"scalar curvature equals 4n(n−1)μ² (relative)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          const CheckResult r =
              ctx.need_space().with_backend([&](const auto& b) { return verify_killing_scalar(b, pts, s.tested.squared()); });
          return OpOutcome{r.residual, r.fd_error, {{"mu_squared", s.tested.squared()}}};
        }}},
      {"metric_compatibility",
       {"e_k g(e_i, e_j) = Γ_kij + Γ_kji on chart backends",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const Space& sp = ctx.need_space();
          OpOutcome out;
          sp.with_backend([&](const auto& b) {
            if constexpr (std::is_same_v<std::decay_t<decltype(b)>, ChartBackend>) {
              for (const auto& x : pts) {
                const CheckResult r = metric_compatibility(b, x);
                out.absorb(r.residual, r.fd_error);
              }
            } else {
              throw PreconditionError("metric_compatibility: chart backend required");
            }
          });
          return out;
        }}},

      // ---- Killing spinors
      {"killing_spinor",
       {"‖∇_{e_k}σ − μ e_k·σ‖ (params mu_re / mu_im override μ)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          const CheckResult r =
              ctx.need_space().with_backend([&](const auto& b) { return killing_residual(b, s.rep, s.sigma, s.tested, pts); });
          return OpOutcome{r.residual, r.fd_error, {{"mu_re", s.tested.value().real()}, {"mu_im", s.tested.value().imag()}}};
        }}},
      {"spinor_curvature",
       {"R^S_{e_ie_j}σ = ¼ R_ijab e_a e_b·σ for all i < j",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          OpOutcome out;
          ctx.need_space().with_backend([&](const auto& b) {
            fd::ErrorScope scope;
            for (const auto& x : pts)
              for (int i = 0; i < b.dim(); ++i)
                for (int j = i + 1; j < b.dim(); ++j) out.absorb(spinor_curvature(b, s.rep, s.sigma, i, j, x).residual);
            out.fd_error = scope.max_error();
          });
          return out;
        }}},
      {"clifford_norm",
       {"‖e_i·σ‖ = ‖σ‖ for unit frame vectors",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          OpOutcome out;
          for (const auto& x : pts) out.absorb(max_gamma_norm_defect(s.rep, s.sigma(x)));
          return out;
        }}},
      {"q_sigma",
       {"q = f² − |∇f|²/(4ν²): max of |mean| and spread",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const WarpedProduct& w = warped(ctx);
          const SpinorSetup s = spinor_setup(ctx);
          const QSigma q = q_sigma(w.backend, s.sigma, w.nu, pts);
          return OpOutcome{std::max(std::abs(q.mean), q.spread), q.fd_error, {{"mean", q.mean}, {"spread", q.spread}}};
        }}},
      {"length_function",
       {"f = ⟨σ, σ⟩ = e^{−2νt}",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const WarpedProduct& w = warped(ctx);
          return OpOutcome{length_residual(build_type1_spinor(w), pts), 0.0, {}};
        }}},
      {"t_action",
       {"∂_t·σ = √−1 σ",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const WarpedProduct& w = warped(ctx);
          return OpOutcome{t_action_residual(w.rep, build_type1_spinor(w), pts), 0.0, {}};
        }}},
      {"orthogonality",
       {"Re⟨e_i·σ, e_j·σ⟩ = δ_ij f",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          return OpOutcome{orthogonality_check(s.rep, s.sigma, pts), 0.0, {}};
        }}},

      // ---- Bochner formula and its consequences
      {"bochner",
       {"D∘D Φ(h) against the Bochner right-hand side (param relative: 0/1)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          const auto hs = fields(ctx, "random_constant", 1, false);
          const bool relative = ctx.entry.param_int("relative", 0) != 0;
          OpOutcome out;
          ctx.need_space().with_backend([&](const auto& b) {
            fd::ErrorScope scope;
            for (const auto& h : hs)
              for (const auto& x : pts) {
                const BochnerCheck c = bochner_check(b, s.rep, h, s.sigma, s.tested, x);
                out.absorb(relative ? c.relative : c.residual);
              }
            out.fd_error = scope.max_error();
          });
          return out;
        }}},
      {"phi_inner",
       {"Re⟨Φ(h), Φ(h̃)⟩ = ⟨h, h̃⟩ f for random pairs",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          const int n = ctx.need_space().dim();
          const int count = ctx.entry.param_int("ensemble", 20);
          OpOutcome out;
          for (const auto& x : pts) {
            const ComplexVector sig = s.sigma(x);
            for (int i = 0; i < count; ++i) {
              const RealMatrix h1 = random_symmetric(n, ctx.rng);
              const RealMatrix h2 = random_symmetric(n, ctx.rng);
              out.absorb(re_inner_phi_residual(s.rep, h1, h2, sig));
            }
          }
          return out;
        }}},
      {"t_action_norm",
       {"‖∂_t·Φ(h)‖ = ‖Φ(h)‖ for random h",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const SpinorSetup s = spinor_setup(ctx);
          const int n = ctx.need_space().dim();
          const int count = ctx.entry.param_int("ensemble", 20);
          OpOutcome out;
          for (const auto& x : pts) {
            const ComplexVector sig = s.sigma(x);
            out.absorb(t_action_norm_residual(s.rep, RealMatrix::Identity(n, n), sig, s.t_index));
            for (int i = 0; i < count; ++i) out.absorb(t_action_norm_residual(s.rep, random_symmetric(n, ctx.rng), sig, s.t_index));
          }
          return out;
        }}},
      {"cauchy",
       {"pointwise Cauchy steps of the imaginary-Killing estimate (residual = −min margin)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const WarpedProduct& w = warped(ctx);
          const SpinorSetup s = spinor_setup(ctx);
          const auto hs = fields(ctx, "random_polynomial", 3, false);
          OpOutcome out;
          double margin = std::numeric_limits<double>::infinity();
          fd::ErrorScope scope;
          for (const auto& h : hs) {
            const SpinorOneFormField phi = phi_field(s.rep, h, s.sigma);
            for (const auto& x : pts) {
              const ComplexMatrix d_phi = twisted_dirac(w.backend, s.rep, phi, x);
              const RealMatrix hx = h(x);
              margin = std::min(margin, cauchy_margin(s.rep, d_phi, phi(x), s.tested, w.nu, length_function(s.sigma, x),
                                                      pairing(hx, hx), s.t_index));
            }
          }
          out.residual = std::max(0.0, -margin);
          out.fd_error = scope.max_error();
          out.values["min_margin"] = margin;
          return out;
        }}},
      {"real_killing_identity",
       {"⟨Eh, h⟩ = ‖DΦ‖² − 2μRe⟨DΦ, Φ⟩ − n(n−2)μ²⟨h, h⟩ on constant TT h, plus |Im μ⟨DΦ, Φ⟩|",
        [](OpContext& ctx) {
          const HomogeneousBackend& b = homogeneous(ctx);
          const SpinorSetup s = spinor_setup(ctx);
          const ComplexVector sig = s.sigma(Point::Zero(b.dim()));
          OpOutcome out;
          double imag = 0.0;
          for (int i = 0; i < ctx.entry.param_int("ensemble", 20); ++i) {
            const RealKillingCheck c = real_killing_identity(b, s.rep, random_traceless(b.dim(), ctx.rng), sig, s.tested);
            out.absorb(std::max(c.residual, c.imaginary_part));
            imag = std::max(imag, c.imaginary_part);
          }
          out.values["max_imaginary_part"] = imag;
          return out;
        }}},
      {"spectral_gap",
       {"⟨(D−μ)²Φ(h), Φ(h)⟩ − (n−1)²μ²⟨h, h⟩ over an ensemble (residual = −min gap)",
        [](OpContext& ctx) {
          const HomogeneousBackend& b = homogeneous(ctx);
          const SpinorSetup s = spinor_setup(ctx);
          std::vector<RealMatrix> ensemble;
          for (int i = 0; i < ctx.entry.param_int("ensemble", 20); ++i) ensemble.push_back(random_traceless(b.dim(), ctx.rng));
          const std::vector<double> gaps = spectral_gap_report(b, s.rep, s.sigma(Point::Zero(b.dim())), s.tested, ensemble);
          OpOutcome out;
          out.residual = gaps.empty() ? 0.0 : std::max(0.0, -gaps.front());
          if (!gaps.empty()) {
            out.values["min_gap"] = gaps.front();
            out.values["max_gap"] = gaps.back();
          }
          return out;
        }}},
      {"homogeneous_integral",
       {"pointwise value times closed-form volume against params expected_volume",
        [](OpContext& ctx) {
          const double v = homogeneous_integral(ctx.need_space(), ctx.entry.param("value", 1.0));
          OpOutcome out;
          out.values["integral"] = v;
          if (ctx.entry.expected) out.residual = relative_diff(v, ctx.entry.expected->value);
          return out;
        }}},

      // ---- Sasaki bundles
      {"kaehler_base",
       {"J² = −1, G(J·, J·) = G, dΩ = 0, dA = 2Ω and Ric_G = k G on the base",
        [](OpContext& ctx) {
          const SasakiBundle& s = sasaki(ctx);
          std::vector<Point> pts;
          for (const auto& x : ctx.samples()) pts.push_back(s.project(x));
          const KaehlerCheck k = kaehler_check(s.base, pts);
          const CheckResult e = verify_einstein(s.base.backend, pts, s.base.einstein_k);
          OpOutcome out;
          out.absorb(std::max({k.j_squared, k.j_isometry, k.d_omega, k.potential}), k.fd_error);
          out.absorb(e.residual, e.fd_error);
          return out;
        }}},
      {"sasaki_axioms",
       {"contact, normalization, φ², compatibility and dη axioms plus φξ, η∘φ, ∇ξ = −φ",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const AxiomCheck a = axiom_check(sasaki(ctx), pts);
          return OpOutcome{a.max_residual(), a.fd_error,
                           {{"volume", a.volume}, {"axiom2", a.axiom2}, {"axiom3", a.axiom3}, {"axiom4", a.axiom4},
                            {"axiom5", a.axiom5}, {"nabla_xi", a.nabla_xi}}};
        }}},
      {"sasaki_curvature_condition",
       {"R_{Xξ}Y = −g(ξ, Y)X + g(X, Y)ξ",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const CheckResult r = curvature_condition_check(sasaki(ctx), pts);
          return OpOutcome{r.residual, r.fd_error, {}};
        }}},
      {"connection_lift",
       {"[ξ, X̃] = 0, ∇_X̃Ỹ = (∇_XY)~ − Ω(X, Y)ξ, ∇_ξX̃ = ∇_X̃ξ = −φX̃, ∇_ξξ = 0",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          const ConnectionLiftCheck c = connection_lift_check(sasaki(ctx), pts, ctx.rng, ctx.entry.param_int("ensemble", 3));
          return OpOutcome{c.max_residual(), c.fd_error,
                           {{"bracket", c.bracket}, {"horizontal", c.horizontal}, {"mixed", c.mixed}, {"vertical", c.vertical}}};
        }}},
      {"laplacian_lift",
       {"rough Laplacian of a lifted tensor against the base (relative)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          OpOutcome out;
          for (const auto& h : fields(ctx, "random_polynomial", 1, true)) {
            const LaplacianLiftCheck c = laplacian_lift_check(sasaki(ctx), h, pts);
            out.absorb(c.max_residual(), c.fd_error);
            out.values["iterated"] = std::max(out.values["iterated"], c.iterated);
            out.values["correction"] = std::max(out.values["correction"], c.correction);
            out.values["vertical"] = std::max(out.values["vertical"], c.vertical);
            out.values["combined"] = std::max(out.values["combined"], c.combined);
          }
          return out;
        }}},
      {"curvature_lift",
       {"submersion curvature, Ricci and R̊ relations (relative)",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          OpOutcome out;
          for (const auto& h : fields(ctx, "random_polynomial", 1, true)) {
            const CurvatureLiftCheck c = curvature_lift_check(sasaki(ctx), h, pts);
            out.absorb(c.max_residual(), c.fd_error);
            out.values["mixed"] = std::max(out.values["mixed"], c.mixed);
            out.values["horizontal"] = std::max(out.values["horizontal"], c.horizontal);
            out.values["ricci"] = std::max(out.values["ricci"], c.ricci);
            out.values["curvature_action"] = std::max(out.values["curvature_action"], c.curvature_action);
          }
          return out;
        }}},
      {"einstein_lift",
       {"⟨E h̃, h̃⟩ = ⟨E h, h⟩ + 4⟨h, h⟩ + 4⟨h∘J, h⟩ (relative) and ⟨h∘J, h⟩ ≤ ⟨h, h⟩",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          OpOutcome out;
          double excess = -std::numeric_limits<double>::infinity();
          for (const auto& h : fields(ctx, "random_polynomial", 1, true)) {
            const EinsteinLiftCheck c = einstein_lift_check(sasaki(ctx), h, pts);
            out.absorb(c.residual, c.fd_error);
            excess = std::max(excess, c.j_excess);
            if (!c.lifted.empty()) out.values["lifted_first"] = c.lifted.front();
          }
          out.values["j_excess"] = excess;
          out.absorb(std::max(0.0, excess));
          if (ctx.entry.expected && out.values.count("lifted_first"))
            out.absorb(relative_diff(out.values["lifted_first"], ctx.entry.expected->value));
          return out;
        }}},
      {"lift_tt",
       {"trace and divergence of the lift of a base TT tensor",
        [](OpContext& ctx) {
          const auto pts = ctx.samples();
          OpOutcome out;
          for (const auto& h : fields(ctx, "product_direction", 1, true)) {
            const LiftReport r = lift_tt_report(sasaki(ctx), h, pts, ctx.entry.tolerance);
            out.absorb(std::max({r.lifted.max_trace, r.lifted.max_divergence, r.xi_divergence, r.trace_match,
                                 r.divergence_match}),
                       std::max(r.base.fd_error, r.lifted.fd_error));
            out.values["trace"] = r.lifted.max_trace;
            out.values["divergence"] = r.lifted.max_divergence;
          }
          return out;
        }}},
      {"certificate",
       {"instability certificate for a product base (params p1, p2)",
        [](OpContext& ctx) {
          const InstabilityCertificate c = instability_certificate(ctx.entry.param_int("p1", 1), ctx.entry.param_int("p2", 1),
                                                                   ctx.entry.samples, ctx.entry.seed);
          OpOutcome out;
          out.values = {{"base_value", c.base_value},
                        {"lifted_value", c.lifted_value},
                        {"h_norm_sq", c.h_norm_sq},
                        {"rayleigh_quotient", c.rayleigh_quotient},
                        {"unstable", c.unstable ? 1.0 : 0.0}};
          if (c.numeric_checked) {
            out.absorb(std::max({c.numeric_base_max_error, c.numeric_lifted_max_error, c.numeric_h_norm_error,
                                 c.numeric_hj_error, c.lifted_trace, c.lifted_divergence}),
                       c.fd_error);
            out.values["numeric_lifted_max_error"] = c.numeric_lifted_max_error;
          }
          if (ctx.entry.expected) out.absorb(std::abs(c.lifted_value - ctx.entry.expected->value));
          if (!c.unstable) out.absorb(std::numeric_limits<double>::infinity());
          return out;
        }}},
  };
  return registry;
}

}  // namespace kslab::harness
