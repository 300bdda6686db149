#include <gtest/gtest.h>

#include "kslab/catalog.hpp"
#include "kslab/sasaki.hpp"
#include "kslab/tensorfield.hpp"

using namespace kslab;

namespace {
const HomogeneousBackend& unit_su2() {
  static const HomogeneousBackend b(catalog::su2(1.0));
  return b;
}
}  // namespace

TEST(TensorField, MetricIsParallel) {
  SplitMix64 rng(1);
  const ChartBackend s(catalog::round_sphere(3, 1.0));
  const SymTensorField g = metric_field(3);
  for (const auto& x : s.sample(3, rng)) {
    for (int k = 0; k < 3; ++k) EXPECT_LE(max_abs(covariant_derivative(s, g, k, x)), 1e-9);
    EXPECT_LE(max_abs(rough_laplacian(s, g, x)), 1e-7);
  }
  EXPECT_LE(max_abs(rough_laplacian(unit_su2(), g, Point::Zero(3))), 1e-14);
}

TEST(TensorField, FlatDivergenceAndLaplacian) {
  SplitMix64 rng(2);
  const ChartBackend flat(catalog::flat(3));
  const SymTensorField outer{[](const Point& x) { return RealMatrix(x * x.transpose()); }};
  const SymTensorField scaled{[](const Point& x) { return RealMatrix(x.squaredNorm() * RealMatrix::Identity(3, 3)); }};
  for (const auto& x : flat.sample(4, rng)) {
    EXPECT_LE(max_abs(RealVector(divergence(flat, outer, x) + 4.0 * x)), 1e-9);
    EXPECT_LE(max_abs(RealMatrix(rough_laplacian(flat, scaled, x) + 6.0 * RealMatrix::Identity(3, 3))), 1e-6);
  }
}

TEST(TensorField, CurvatureActionOnUnitSphere) {
  SplitMix64 rng(3);
  const CurvatureData R = unit_su2().curvature(Point::Zero(3));
  const RealMatrix g = RealMatrix::Identity(3, 3);
  for (int i = 0; i < 5; ++i) {
    const RealMatrix h0 = random_traceless(3, rng);
    EXPECT_LE(max_abs(RealMatrix(curvature_action(R, h0) + h0)), 1e-14);
    const RealMatrix h = random_symmetric(3, rng);
    EXPECT_LE(max_abs(RealMatrix(curvature_action(R, h) - (h.trace() * g - h))), 1e-14);
  }
  EXPECT_LE(max_abs(RealMatrix(curvature_action(R, g) - R.ricci)), 1e-14);
}

TEST(TensorField, EinsteinOperatorOnSu2) {
  SplitMix64 rng(4);
  const Point o = Point::Zero(3);
  const RealMatrix g = RealMatrix::Identity(3, 3);
  for (int i = 0; i < 10; ++i) {
    const RealMatrix h = random_symmetric(3, rng);
    const RealMatrix h0 = h - h.trace() / 3.0 * g;
    const RealMatrix E = einstein_operator(unit_su2(), constant_field(h), o);
    EXPECT_LE(max_abs(RealMatrix(E - (8.0 * h0 - 4.0 * h.trace() / 3.0 * g))), 1e-13);
    EXPECT_LE(max_abs(RealMatrix(rough_laplacian(unit_su2(), constant_field(h0), o) - 6.0 * h0)), 1e-13);
  }
  EXPECT_NEAR(pairing(einstein_operator(unit_su2(), metric_field(3), o), g), -12.0, 1e-13);
}

TEST(TensorField, MetricEigenvalueOnSphereChart) {
  SplitMix64 rng(5);
  const ChartBackend s3(catalog::round_sphere(3, 1.0));
  for (const auto& x : s3.sample(3, rng))
    EXPECT_LE(max_abs(RealMatrix(einstein_operator(s3, metric_field(3), x) + 4.0 * RealMatrix::Identity(3, 3))), 1e-6);
}

TEST(TensorField, ProductDirectionOnProductBase) {
  SplitMix64 rng(6);
  const KaehlerBase base = build_base("S2xS2", 6.0);
  const SymTensorField h = product_unstable_direction(base.chart);
  for (const auto& x : base.backend.sample(5, rng)) {
    EXPECT_NEAR(pairing(h(x), h(x)), 1.0, 1e-15);
    EXPECT_NEAR(pairing(einstein_operator(base.backend, h, x), h(x)), -12.0, 1e-6);
    EXPECT_LE(max_abs(lichnerowicz_shift(einstein_operator(base.backend, h, x), h(x), 6.0)), 1e-6);
  }
  const TTReport tt = tt_report(base.backend, h, base.backend.sample(5, rng), 1e-8);
  EXPECT_TRUE(tt.traceless);
  EXPECT_TRUE(tt.transverse);
  EXPECT_THROW(product_unstable_direction(catalog::flat(4)), PreconditionError);
}

TEST(TensorField, TTReportFlagsNonTT) {
  SplitMix64 rng(7);
  const ChartBackend flat(catalog::flat(3));
  const TTReport tt = tt_report(flat, random_polynomial_field(3, 3, rng), flat.sample(5, rng), 1e-8);
  EXPECT_FALSE(tt.traceless);
  EXPECT_FALSE(tt.transverse);
}

TEST(TensorField, PolynomialFieldIsSymmetricAndDeterministic) {
  SplitMix64 a(8), b(8);
  const SymTensorField h1 = random_polynomial_field(4, 3, a);
  const SymTensorField h2 = random_polynomial_field(4, 3, b);
  const Point x = Point::Constant(4, 0.3);
  EXPECT_EQ(h1(x), h2(x));
  EXPECT_LE(max_abs(RealMatrix(h1(x) - h1(x).transpose())), 0.0);
}
