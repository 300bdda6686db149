#include <gtest/gtest.h>

#include <cmath>

#include "kslab/warped.hpp"

using namespace kslab;

TEST(Warped, BuildValidatesInput) {
  EXPECT_THROW(build_warped(0, 0.5), PreconditionError);
  EXPECT_THROW(build_warped(2, 0.0), PreconditionError);
  EXPECT_THROW(build_warped(2, -1.0), PreconditionError);
  EXPECT_THROW(build_warped(2, std::nan("")), PreconditionError);
}

TEST(Warped, RepresentationIsClifford) {
  for (int fiber = 1; fiber <= 6; ++fiber) {
    const WarpedProduct w = build_warped(fiber, 0.5);
    EXPECT_EQ(w.rep.dim(), fiber + 1);
    EXPECT_EQ(w.t_index(), fiber);
    EXPECT_LE(w.rep.relation_residual(), 1e-13);
  }
}

TEST(Warped, TypeOneSpinorsAreKilling) {
  SplitMix64 rng(1);
  for (int fiber = 1; fiber <= 4; ++fiber)
    for (double nu : {0.3, 0.5, 1.0}) {
      const WarpedProduct w = build_warped(fiber, nu);
      const TypeOneSpinor s = build_type1_spinor(w);
      EXPECT_EQ(s.parity, fiber % 2 == 0 ? FiberParity::kEven : FiberParity::kOdd);
      EXPECT_NEAR(s.psi.norm(), 1.0, 1e-15);
      const auto pts = w.backend.sample(10, rng);
      EXPECT_LE(killing_residual(w.backend, w.rep, s.sigma, w.killing_constant(), pts).residual, 1e-7)
          << fiber << " " << nu;
      EXPECT_GT(killing_residual(w.backend, w.rep, s.sigma, KillingConstant::imaginary(-nu), pts).residual, 0.1);
      EXPECT_GT(killing_residual(w.backend, w.rep, s.sigma, KillingConstant::imaginary(2.0 * nu), pts).residual, 0.1);
    }
}

TEST(Warped, StructureIdentities) {
  SplitMix64 rng(2);
  for (int fiber : {2, 3})
    for (double nu : {0.3, 0.5}) {
      const WarpedProduct w = build_warped(fiber, nu);
      const TypeOneSpinor s = build_type1_spinor(w);
      const auto pts = w.backend.sample(20, rng);
      const QSigma q = q_sigma(w.backend, s.sigma, nu, pts);
      ASSERT_EQ(q.values.size(), 20u);
      for (double v : q.values) EXPECT_LE(std::abs(v), 1e-8);
      EXPECT_LE(q.spread, 1e-8);
      EXPECT_LE(length_residual(s, pts), 1e-9);
      EXPECT_LE(t_action_residual(w.rep, s, pts), 1e-8);
      EXPECT_LE(orthogonality_check(w.rep, s.sigma, pts), 1e-8);
    }
}

TEST(Warped, LengthFunctionAtOrigin) {
  const WarpedProduct w = build_warped(3, 0.5);
  const TypeOneSpinor s = build_type1_spinor(w);
  Point x = Point::Zero(4);
  EXPECT_NEAR(length_function(s.sigma, x), 1.0, 1e-15);
  x(w.t_index()) = 0.5;
  EXPECT_NEAR(length_function(s.sigma, x), std::exp(-0.5), 1e-15);
}

TEST(Warped, QScalesWithFourthPowerOfConstant) {
  SplitMix64 rng(3);
  const WarpedProduct w = build_warped(2, 0.5);
  const TypeOneSpinor s = build_type1_spinor(w);
  const ComplexVector psi = s.psi;
  const int t = w.t_index();
  const SpinorField off{[psi, t](const Point& x) { return ComplexVector(std::exp(-x(t)) * (1.0 + 0.3 * x(0)) * psi); }};
  const Complex c(1.5, -0.7);
  const SpinorField scaled{[off, c](const Point& x) { return ComplexVector(c * off(x)); }};
  const auto pts = w.backend.sample(5, rng);
  const QSigma q1 = q_sigma(w.backend, off, 0.5, pts);
  const QSigma q2 = q_sigma(w.backend, scaled, 0.5, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_GT(std::abs(q1.values[i]), 1e-3);
    EXPECT_NEAR(q2.values[i], std::pow(std::abs(c), 4) * q1.values[i], 1e-8);
  }
}

TEST(Warped, QRejectsBadInput) {
  const WarpedProduct w = build_warped(2, 0.5);
  const TypeOneSpinor s = build_type1_spinor(w);
  EXPECT_THROW(q_sigma(w.backend, s.sigma, 0.0, {Point::Zero(3)}), PreconditionError);
  EXPECT_THROW(q_sigma(w.backend, s.sigma, 0.5, {}), PreconditionError);
}

TEST(Warped, CurvatureIsHyperbolic) {
  SplitMix64 rng(4);
  const WarpedProduct w = build_warped(3, 0.5);
  EXPECT_LE(verify_constant_curvature(w.backend, w.backend.sample(5, rng), -1.0).residual, 1e-7);
}
