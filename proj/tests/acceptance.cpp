// Acceptance run: one PASS/FAIL line per criterion with its runtime.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kslab/harness/suite.hpp"
#include "kslab/kslab.hpp"

using namespace kslab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void expect(bool ok, const char* fmt, double value) {
    if (!ok) {
      char buf[256];
      std::snprintf(buf, sizeof buf, fmt, value);
      if (!out_.detail.empty()) out_.detail += "; ";
      out_.detail += buf;
      out_.pass = false;
    }
  }
  void le(double value, double bound, const char* what) {
    char fmt[200];
    std::snprintf(fmt, sizeof fmt, "%s = %%.3g > %.1g", what, bound);
    expect(std::isfinite(value) && value <= bound, fmt, value);
  }
  void ge(double value, double bound, const char* what) {
    char fmt[200];
    std::snprintf(fmt, sizeof fmt, "%s = %%.3g < %.3g", what, bound);
    expect(std::isfinite(value) && value >= bound, fmt, value);
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

ComplexVector killing_spinor_s3(const HomogeneousBackend& s3, const CliffordRep& rep) {
  return constant_killing_spinors(s3, rep, KillingConstant::real(0.5)).col(0).normalized();
}

Outcome clifford_suite() {
  Tally t;
  SplitMix64 rng(1);
  for (int n = 1; n <= 9; ++n) {
    const CliffordRep rep = build_rep(n);
    t.le(rep.relation_residual(), 1e-13, ("relations n=" + std::to_string(n)).c_str());
    const ComplexVector s = rng.complex_normal_vector(rep.spinor_dim());
    for (int i = 0; i < n; ++i) t.le(sandwich_identity_check(rep, s, i), 1e-13, "sandwich (n-2) coefficient");
  }
  return t.result();
}

Outcome curvature_suite() {
  Tally t;
  SplitMix64 rng(2);
  auto chart = [&](ChartPatch c, double kappa, const char* what) {
    const ChartBackend b(std::move(c));
    const auto pts = b.sample(10, rng);
    t.le(verify_constant_curvature(b, pts, kappa).residual, 1e-7, what);
    t.le(verify_curvature_symmetries(b, pts).residual, 1e-7, what);
    return b;
  };
  chart(catalog::round_sphere(2, 1.0), 1.0, "S2 curvature");
  const ChartBackend s3c = chart(catalog::round_sphere(3, 1.0), 1.0, "S3 chart curvature");
  chart(catalog::hyperbolic_ball(3, 1.0), -1.0, "H3 curvature");
  for (int fiber : {2, 3})
    for (double nu : {0.3, 0.5}) {
      const ChartBackend w = chart(catalog::warped_flat(fiber, nu), -4.0 * nu * nu, "warped curvature");
      t.le(verify_killing_scalar(w, w.sample(10, rng), -nu * nu).residual, 1e-6, "warped scalar vs 4n(n-1)mu^2");
    }
  const ChartBackend h4(catalog::warped_flat(3, 0.5));
  t.le(verify_einstein(h4, h4.sample(10, rng), -3.0).residual, 1e-7, "H4 Einstein k=-3");
  t.le(verify_einstein(s3c, s3c.sample(10, rng), 2.0).residual, 1e-7, "S3 Einstein k=2");

  const HomogeneousBackend s3(catalog::su2(1.0));
  const std::vector<Point> origin{Point::Zero(3)};
  t.le(verify_constant_curvature(s3, origin, 1.0).residual, 1e-12, "su2 curvature");
  t.le(verify_curvature_symmetries(s3, origin).residual, 1e-12, "su2 symmetries");
  t.le(verify_killing_scalar(s3, origin, 0.25).residual, 1e-6, "su2 scalar vs 4n(n-1)mu^2");
  const Point x = s3c.sample(1, rng).front();
  t.le(std::abs(s3c.curvature(x).scalar - s3.curvature(origin.front()).scalar), 1e-6, "S3 chart vs homogeneous scalar");

  const SasakiBundle m5 = build_total(build_base("S2xS2", 6.0));
  t.le(verify_einstein(m5.backend, m5.sample(5, rng), 4.0).residual, 1e-6, "M5 Einstein k=4");
  return t.result();
}

Outcome killing_spinors() {
  Tally t;
  SplitMix64 rng(3);
  const HomogeneousBackend s3(catalog::su2(1.0));
  const CliffordRep rep = build_rep(3);
  const ComplexMatrix basis = constant_killing_spinors(s3, rep, KillingConstant::real(0.5));
  t.ge(static_cast<double>(basis.cols()), 1.0, "S3 Killing space dimension");
  const std::vector<Point> origin{Point::Zero(3)};
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    const ComplexVector psi = basis.col(c);
    const SpinorField s{[psi](const Point&) { return psi; }};
    t.le(killing_residual(s3, rep, s, KillingConstant::real(0.5), origin).residual, 1e-12, "S3 Killing residual");
    t.ge(killing_residual(s3, rep, s, KillingConstant::real(-0.5), origin).residual, 1e-3, "S3 wrong-sign control");
  }
  for (int fiber : {2, 3})
    for (double nu : {0.3, 0.5}) {
      const WarpedProduct w = build_warped(fiber, nu);
      const TypeOneSpinor s = build_type1_spinor(w);
      const auto pts = w.backend.sample(20, rng);
      t.le(killing_residual(w.backend, w.rep, s.sigma, w.killing_constant(), pts).residual, 1e-7, "warped Killing residual");
      t.ge(killing_residual(w.backend, w.rep, s.sigma, KillingConstant::imaginary(-nu), pts).residual, 1e-3,
           "warped wrong-sign control");
      t.ge(killing_residual(w.backend, w.rep, s.sigma, KillingConstant::real(nu), pts).residual, 1e-3,
           "warped real-constant control");
    }
  return t.result();
}

Outcome warped_structure() {
  Tally t;
  SplitMix64 rng(4);
  for (int fiber : {2, 3})
    for (double nu : {0.3, 0.5}) {
      const WarpedProduct w = build_warped(fiber, nu);
      const TypeOneSpinor s = build_type1_spinor(w);
      const auto pts = w.backend.sample(20, rng);
      const QSigma q = q_sigma(w.backend, s.sigma, nu, pts);
      double worst = 0.0;
      for (double v : q.values) worst = std::max(worst, std::abs(v));
      t.le(worst, 1e-8, "q_sigma");
      t.le(length_residual(s, pts), 1e-9, "f - exp(-2 nu t)");
      t.le(t_action_residual(w.rep, s, pts), 1e-8, "t-action");
      t.le(orthogonality_check(w.rep, s.sigma, pts), 1e-8, "orthogonality");
    }
  return t.result();
}

/// −2μ Σ_{k,i} T_kij γ_iγ_k σ against 2μ Σ_k γ_k Φ(T_k)^j − 4μ δ_j σ with
/// δ_j = −Σ_k T_kkj, for random T symmetric in (i, j) and random σ.
double delta_term_algebra(int n, SplitMix64& rng) {
  const CliffordRep rep = build_rep(n);
  const ComplexVector sigma = rng.complex_normal_vector(rep.spinor_dim());
  std::vector<RealMatrix> T;
  for (int k = 0; k < n; ++k) T.push_back(rng.symmetric_matrix(n));
  const double mu = 0.7;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    ComplexVector lhs = ComplexVector::Zero(rep.spinor_dim());
    ComplexVector rhs = ComplexVector::Zero(rep.spinor_dim());
    double delta = 0.0;
    for (int k = 0; k < n; ++k) {
      delta -= T[static_cast<std::size_t>(k)](k, j);
      for (int i = 0; i < n; ++i) lhs += -2.0 * mu * T[static_cast<std::size_t>(k)](i, j) * (rep.gamma(i) * (rep.gamma(k) * sigma));
      rhs += 2.0 * mu * rep.gamma(k) * phi_map(rep, T[static_cast<std::size_t>(k)], sigma).col(j);
    }
    rhs -= 4.0 * mu * delta * sigma;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

Outcome bochner() {
  Tally t;
  SplitMix64 rng(5);
  for (int n : {2, 3, 4}) t.le(delta_term_algebra(n, rng), 1e-12, "delta-term algebra");

  const HomogeneousBackend s3(catalog::su2(1.0));
  const CliffordRep rep3 = build_rep(3);
  const ComplexVector psi = killing_spinor_s3(s3, rep3);
  const SpinorField s{[psi](const Point&) { return psi; }};
  const Point origin = Point::Zero(3);
  for (int i = 0; i < 20; ++i) {
    const SymTensorField h = constant_field(random_symmetric(3, rng));
    t.le(bochner_check(s3, rep3, h, s, KillingConstant::real(0.5), origin).residual, 1e-10, "S3 Bochner");
  }

  const WarpedProduct w = build_warped(3, 0.5);
  const TypeOneSpinor sigma = build_type1_spinor(w);
  for (int i = 0; i < 10; ++i) {
    const SymTensorField h = random_polynomial_field(4, 4, rng);
    const Point x = w.backend.sample(1, rng).front();
    t.le(bochner_check(w.backend, w.rep, h, sigma.sigma, w.killing_constant(), x).relative, 1e-5, "H4 Bochner relative");
  }
  return t.result();
}

Outcome pairing_identities() {
  Tally t;
  SplitMix64 rng(6);
  for (int fiber : {2, 3})
    for (double nu : {0.3, 0.5}) {
      const WarpedProduct w = build_warped(fiber, nu);
      const TypeOneSpinor s = build_type1_spinor(w);
      const int n = w.dim();
      const auto pts = w.backend.sample(20, rng);
      for (int i = 0; i < 20; ++i) {
        const RealMatrix h = random_symmetric(n, rng);
        const RealMatrix h2 = random_symmetric(n, rng);
        for (const auto& x : pts) {
          const ComplexVector sx = s.sigma(x);
          t.le(re_inner_phi_residual(w.rep, h, h2, sx), 1e-8, "Re<Phi(h),Phi(h2)> - <h,h2> f");
          t.le(t_action_norm_residual(w.rep, h, sx, s.t_index), 1e-8, "|d/dt . Phi(h)| - |Phi(h)|");
        }
      }
    }
  const HomogeneousBackend s3(catalog::su2(1.0));
  const CliffordRep rep3 = build_rep(3);
  const ComplexVector psi = killing_spinor_s3(s3, rep3);
  for (int i = 0; i < 20; ++i)
    t.le(re_inner_phi_residual(rep3, random_symmetric(3, rng), random_symmetric(3, rng), psi), 1e-12, "S3 pairing");
  return t.result();
}

Outcome real_killing() {
  Tally t;
  SplitMix64 rng(7);
  const HomogeneousBackend s3(catalog::su2(1.0));
  const CliffordRep rep3 = build_rep(3);
  const ComplexVector psi = killing_spinor_s3(s3, rep3);
  const KillingConstant mu = KillingConstant::real(0.5);
  std::vector<RealMatrix> ensemble;
  for (int i = 0; i < 20; ++i) {
    ensemble.push_back(random_traceless(3, rng));
    const RealKillingCheck c = real_killing_identity(s3, rep3, ensemble.back(), psi, mu);
    t.le(c.residual, 1e-10, "real Killing identity");
    t.le(c.imaginary_part, 1e-10, "Im mu<DPhi,Phi>");
  }
  const std::vector<double> gaps = spectral_gap_report(s3, rep3, psi, mu, ensemble);
  t.ge(gaps.front(), -1e-9, "smallest spectral gap");
  return t.result();
}

Outcome sasaki_suite() {
  Tally t;
  SplitMix64 rng(8);
  struct Case {
    const char* base;
    double k;
  };
  for (const Case& c : {Case{"S2", 4.0}, Case{"S2xS2", 6.0}}) {
    const SasakiBundle s = build_total(build_base(c.base, c.k));
    const auto axiom_pts = s.sample(50, rng);
    t.le(axiom_check(s, axiom_pts).max_residual(), 1e-8, "structure axioms");
    const auto pts = s.sample(10, rng);
    t.le(connection_lift_check(s, pts, rng).max_residual(), 1e-6, "connection lift");
    for (int i = 0; i < 3; ++i) {
      const SymTensorField h = random_polynomial_field(s.base.dim(), s.base.dim(), rng);
      t.le(laplacian_lift_check(s, h, pts).max_residual(), 1e-5, "rough Laplacian lift");
      t.le(curvature_lift_check(s, h, pts).max_residual(), 1e-5, "curvature lift");
      const EinsteinLiftCheck e = einstein_lift_check(s, h, pts);
      t.le(e.residual, 1e-5, "Einstein operator lift");
      t.le(e.j_excess, 1e-12, "<h o J, h> - <h, h>");
    }
    if (std::string(c.base) == "S2") t.le(verify_constant_curvature(s.backend, pts, 1.0).residual, 1e-6, "Hopf kappa=1");
  }
  return t.result();
}

Outcome certificate() {
  Tally t;
  const InstabilityCertificate c = instability_certificate(1, 1, 20, 13);
  t.le(std::abs(c.base_value + 12.0), 0.0, "base value + 12");
  t.le(std::abs(c.lifted_value + 4.0), 0.0, "lifted value + 4");
  t.ge(c.numeric_checked ? 1.0 : 0.0, 1.0, "numeric check performed");
  t.ge(static_cast<double>(c.lifted_values.size()), 20.0, "sample count");
  for (double v : c.lifted_values) t.le(relative_diff(v, -4.0), 1e-4, "pointwise <E h, h> vs -4");
  t.le(c.lifted_trace, 1e-10, "lifted trace");
  t.le(c.lifted_divergence, 1e-6, "lifted divergence");
  t.ge(c.verdict() == "UNSTABLE" ? 1.0 : 0.0, 1.0, "verdict UNSTABLE");
  return t.result();
}

Outcome harness_suite() {
  using namespace kslab::harness;
  Tally t;
  const std::string dir = KSLAB_CONFIG_DIR;
  const std::string first = report_json_text(run_suite(dir + "/default.json"));
  const std::string second = report_json_text(run_suite(dir + "/default.json"));
  t.ge(first == second ? 1.0 : 0.0, 1.0, "byte-identical reports");
  const Report def = run_suite(dir + "/default.json");
  t.le(static_cast<double>(def.summary().fail), 0.0, "default suite failures");
  const Report neg = run_suite(dir + "/negative_control.json");
  t.le(std::abs(static_cast<double>(neg.summary().fail) - 1.0), 0.0, "negative control failures - 1");
  t.ge(neg.exit_code() == 1 ? 1.0 : 0.0, 1.0, "negative control exit code 1");
  return t.result();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 when the criterion sets no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "clifford relations and sandwich identity", 1.0, clifford_suite},
      {2, "curvature oracles and Killing scalar curvature", 30.0, curvature_suite},
      {3, "Killing spinors and negative controls", 0.0, killing_spinors},
      {4, "warped structure: q, length, t-action, orthogonality", 0.0, warped_structure},
      {5, "Bochner formula", 0.0, bochner},
      {6, "Phi pairing and t-action norm", 0.0, pairing_identities},
      {7, "real Killing identity and spectral gaps", 0.0, real_killing},
      {8, "Sasaki structure and lift relations", 300.0, sasaki_suite},
      {9, "instability certificate", 0.0, certificate},
      {10, "harness determinism and negative control", 0.0, harness_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("runtime over budget");
    }
    std::printf("%s criterion %2d  %-52s %8.3fs%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
