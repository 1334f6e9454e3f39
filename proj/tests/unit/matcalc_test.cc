#include <cmath>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "csl/error.h"
#include "csl/matcalc/contraction.h"
#include "csl/matcalc/lyapunov.h"
#include "csl/matcalc/metric.h"
#include "test_util.h"

namespace csl::matcalc {
namespace {

using test::MatricesNear;

Matrix Diag(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v.asDiagonal();
}

template <typename F>
ErrorKind KindOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected csl::Error";
  return ErrorKind::kInvalidArgument;
}

TEST(MetricTest, Identity) {
  const Metric m = MakeMetric(Matrix::Identity(2, 2));
  EXPECT_EQ(m.chi(), 1.0);
  EXPECT_EQ(m.eig_min(), 1.0);
  EXPECT_EQ(m.eig_max(), 1.0);
}

TEST(MetricTest, DiagonalFactor) {
  const Metric m = MakeMetric(Diag({4, 1}));
  EXPECT_TRUE(MatricesNear(m.T(), Diag({2, 1}), 1e-15));
  EXPECT_NEAR(m.chi(), 2.0, 1e-14);
  EXPECT_NEAR(m.eig_min(), 1.0, 1e-14);
  EXPECT_NEAR(m.eig_max(), 4.0, 1e-14);
}

TEST(MetricTest, CoupledChi) {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  const Metric m = MakeMetric(a);
  // Oracle: chi = sqrt(λ_max/λ_min) from a dense eigendecomposition.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  EXPECT_NEAR(m.chi(), std::sqrt(eig.eigenvalues()(1) / eig.eigenvalues()(0)), 1e-12);
  EXPECT_NEAR(m.chi(), 1.7320508075688772, 1e-12);
}

TEST(MetricTest, Errors) {
  Matrix asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_EQ(KindOf([&] { MakeMetric(asym); }), ErrorKind::kNotSymmetric);
  EXPECT_EQ(KindOf([&] { MakeMetric(Diag({1, -1})); }), ErrorKind::kNotPositiveDefinite);
  EXPECT_EQ(KindOf([&] { MakeMetric(Diag({1, 0})); }), ErrorKind::kNotPositiveDefinite);
  EXPECT_EQ(KindOf([&] { MakeMetric(Matrix::Ones(2, 3)); }), ErrorKind::kDimensionMismatch);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_EQ(KindOf([&] { MakeMetric(bad); }), ErrorKind::kNonFinite);
}

TEST(MetricTest, RandomInvariants) {
  for (int k = 0; k < 200; ++k) {
    Rng rng = MakeRng(101, k);
    const Eigen::Index dim = 1 + k % 9;
    const Matrix a = RandomSpd(rng, dim);
    const Metric m = MakeMetric(a);
    EXPECT_LE((m.T().transpose() * m.T() - m.M()).norm(), 1e-10 * m.M().norm());
    Eigen::JacobiSVD<Matrix> svd(m.T());
    const Vector s = svd.singularValues();
    EXPECT_NEAR(m.chi(), s(0) / s(dim - 1), 1e-10 * m.chi());
    EXPECT_GE(m.chi(), 1.0);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m.M());
    EXPECT_GE(eig.eigenvalues().minCoeff(), m.eig_min() * (1 - 1e-12));
    EXPECT_LE(eig.eigenvalues().maxCoeff(), m.eig_max() * (1 + 1e-12));
  }
}

TEST(GeodesicTest, Examples) {
  const Metric eye = Metric::Identity(2);
  EXPECT_DOUBLE_EQ(GeodesicDistance(eye, Vector::Zero(2), Eigen::Vector2d(3, 4)), 5.0);
  const Metric m = MakeMetric(Diag({4, 1}));
  EXPECT_EQ(GeodesicDistance(m, Eigen::Vector2d(0.3, -2), Eigen::Vector2d(0.3, -2)), 0.0);
  EXPECT_NEAR(GeodesicDistance(m, Vector::Zero(2), Vector::Ones(2)), std::sqrt(5.0), 1e-15);
  EXPECT_EQ(KindOf([&] { GeodesicDistance(m, Vector::Zero(2), Vector::Zero(3)); }),
            ErrorKind::kDimensionMismatch);
}

TEST(GeodesicTest, MetricAxioms) {
  for (int k = 0; k < 100; ++k) {
    Rng rng = MakeRng(102, k);
    const Eigen::Index dim = 1 + k % 6;
    const Metric m = MakeMetric(RandomSpd(rng, dim));
    const Vector x = StandardNormalVector(rng, dim);
    const Vector y = StandardNormalVector(rng, dim);
    const Vector z = StandardNormalVector(rng, dim);
    const double xy = GeodesicDistance(m, x, y);
    EXPECT_NEAR(xy, GeodesicDistance(m, y, x), 1e-12 * (1 + xy));
    EXPECT_GT(xy, 0.0);
    EXPECT_LE(xy, GeodesicDistance(m, x, z) + GeodesicDistance(m, z, y) + 1e-12);
  }
}

TEST(DistortionTest, Examples) {
  const auto same = ComputeDistortionBand(Metric::Identity(2), Metric::Identity(2));
  EXPECT_EQ(same.lower, 1.0);
  EXPECT_EQ(same.upper, 1.0);
  const auto scaled = ComputeDistortionBand(MakeMetric(Diag({4, 4})), Metric::Identity(2));
  EXPECT_NEAR(scaled.lower, 2.0, 1e-14);
  EXPECT_NEAR(scaled.upper, 2.0, 1e-14);
  const Metric m1 = Metric::Identity(2);
  const Metric m2 = MakeMetric(Diag({9, 1}));
  const auto band = ComputeDistortionBand(m1, m2);
  EXPECT_NEAR(band.lower, 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(band.upper, 1.0, 1e-14);
  Rng rng = MakeRng(103, 0);
  for (int k = 0; k < 1000; ++k) {
    const Vector x = StandardNormalVector(rng, 2), y = StandardNormalVector(rng, 2);
    EXPECT_TRUE(band.Contains(GeodesicDistance(m1, x, y) / GeodesicDistance(m2, x, y), 1e-12));
  }
  EXPECT_EQ(KindOf([&] { ComputeDistortionBand(m1, Metric::Identity(3)); }),
            ErrorKind::kDimensionMismatch);
}

TEST(DistortionTest, RandomPairs) {
  for (int k = 0; k < 1000; ++k) {
    Rng rng = MakeRng(104, k);
    const Eigen::Index dim = 1 + k % 8;
    const Metric m1 = MakeMetric(RandomSpd(rng, dim));
    const Metric m2 = MakeMetric(RandomSpd(rng, dim));
    const auto band = ComputeDistortionBand(m1, m2);
    EXPECT_LE(band.lower, band.upper);
    const Vector x = StandardNormalVector(rng, dim), y = StandardNormalVector(rng, dim);
    EXPECT_TRUE(band.Contains(GeodesicDistance(m1, x, y) / GeodesicDistance(m2, x, y), 1e-12));
  }
}

TEST(LyapunovTest, Examples) {
  EXPECT_TRUE(MatricesNear(SolveLyapunov(-Matrix::Identity(2, 2), Matrix::Identity(2, 2)).M(),
                           0.5 * Matrix::Identity(2, 2), 1e-15));
  EXPECT_TRUE(MatricesNear(SolveLyapunov(Diag({-1, -2}), Matrix::Identity(2, 2)).M(),
                           Diag({0.5, 0.25}), 1e-15));
}

TEST(LyapunovTest, AgreesWithKroneckerOracle) {
  for (int k = 0; k < 30; ++k) {
    Rng rng = MakeRng(105, k);
    const Eigen::Index dim = 1 + k % 10;
    const Matrix j = test::RandomHurwitz(rng, dim);
    const Matrix q = RandomSpd(rng, dim, 1.0);
    const Matrix m = SolveLyapunovEquation(j, q);
    const Matrix oracle = test::KroneckerLyapunov(j, q);
    EXPECT_TRUE(MatricesNear(m, oracle, 1e-8 * (1 + oracle.cwiseAbs().maxCoeff())));
  }
}

TEST(LyapunovTest, ResidualContract) {
  for (int k = 0; k < 60; ++k) {
    Rng rng = MakeRng(106, k);
    const Eigen::Index dim = 1 + (k * 11) % 50;
    const Matrix j = test::RandomHurwitz(rng, dim, 0.05 + 0.1 * (k % 4));
    const Matrix q = RandomSpd(rng, dim, 1.0);
    const Metric m = SolveLyapunov(j, q);
    EXPECT_LE((m.M() * j + j.transpose() * m.M() + q).norm(), 1e-10 * q.norm());
    EXPECT_GT(m.eig_min(), 0.0);
  }
}

TEST(LyapunovTest, Errors) {
  EXPECT_EQ(KindOf([] { SolveLyapunov(Diag({-1, 0.5}), Matrix::Identity(2, 2)); }),
            ErrorKind::kNotHurwitz);
  EXPECT_EQ(KindOf([] { SolveLyapunov(Diag({-1, 0}), Matrix::Identity(2, 2)); }),
            ErrorKind::kNotHurwitz);
  Matrix rot(2, 2);
  rot << 0, 1, -1, 0;  // purely imaginary pair
  EXPECT_EQ(KindOf([&] { SolveLyapunov(rot, Matrix::Identity(2, 2)); }), ErrorKind::kNotHurwitz);
  EXPECT_EQ(KindOf([] { SolveLyapunov(-Matrix::Identity(2, 2), Diag({1, -1})); }),
            ErrorKind::kNotPositiveDefinite);
  EXPECT_EQ(KindOf([] { SolveLyapunov(-Matrix::Identity(2, 2), Matrix::Identity(3, 3)); }),
            ErrorKind::kDimensionMismatch);
}

TEST(ContractionRateTest, Examples) {
  EXPECT_NEAR(ContractionRate(-2 * Matrix::Identity(2, 2), Metric::Identity(2)), 2.0, 1e-14);
  EXPECT_NEAR(ContractionRate(Diag({-3, -1}), Metric::Identity(2)), 1.0, 1e-14);
  // Preconditioned quadratic: J = −P⁻¹H, metric P, rate γ/p_max.
  const double gamma = 1.3;
  const Matrix p = Diag({2, 1});
  const Matrix j = -p.inverse() * gamma;
  EXPECT_NEAR(ContractionRate(j, MakeMetric(p)), gamma / 2.0, 1e-14);
  EXPECT_EQ(KindOf([] { ContractionRate(-Matrix::Identity(3, 3), Metric::Identity(2)); }),
            ErrorKind::kDimensionMismatch);
}

TEST(ContractionRateTest, SymmetricMatchesEigenvalue) {
  for (int k = 0; k < 100; ++k) {
    Rng rng = MakeRng(107, k);
    const Eigen::Index dim = 1 + k % 7;
    const Matrix a = StandardNormalMatrix(rng, dim, dim);
    const Matrix j = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(j);
    EXPECT_NEAR(ContractionRate(j, Metric::Identity(dim)), -eig.eigenvalues().maxCoeff(), 1e-12);
  }
}

TEST(ContractionRateTest, ScaleFreeInMetric) {
  for (int k = 0; k < 50; ++k) {
    Rng rng = MakeRng(108, k);
    const Eigen::Index dim = 1 + k % 6;
    const Matrix j = StandardNormalMatrix(rng, dim, dim);
    const Matrix m = RandomSpd(rng, dim);
    const double c = std::exp(StandardNormalVector(rng, 1)(0));
    const double base = ContractionRate(j, MakeMetric(m));
    EXPECT_NEAR(ContractionRate(j, MakeMetric(c * m)), base, 1e-10 * (1 + std::abs(base)));
  }
}

TEST(ContractionRateTest, LyapunovSolutionCertifiesRate) {
  // With M from MJ + JᵀM = −Q, the rate is at least ½λ_min(Q)/λ_max(M).
  for (int k = 0; k < 50; ++k) {
    Rng rng = MakeRng(109, k);
    const Eigen::Index dim = 2 + k % 5;
    const Matrix j = test::RandomHurwitz(rng, dim);
    const Matrix q = RandomSpd(rng, dim);
    const Metric m = SolveLyapunov(j, q);
    Eigen::SelfAdjointEigenSolver<Matrix> eq(q);
    EXPECT_GE(ContractionRate(j, m), 0.5 * eq.eigenvalues()(0) / m.eig_max() - 1e-10);
  }
}

TEST(ContractionRateTest, MetricDotShiftsPencil) {
  const Metric eye = Metric::Identity(2);
  EXPECT_NEAR(ContractionRate(-Matrix::Identity(2, 2), eye, Matrix::Zero(2, 2)), 1.0, 1e-14);
  EXPECT_NEAR(ContractionRate(-Matrix::Identity(2, 2), eye, Matrix::Identity(2, 2)), 0.5, 1e-14);
}

TEST(OptimalMetricTest, Examples) {
  const auto eye = OptimalMetricRate(-Matrix::Identity(2, 2));
  EXPECT_TRUE(MatricesNear(eye.metric.M(), 0.5 * Matrix::Identity(2, 2), 1e-15));
  EXPECT_NEAR(eye.rate, 1.0, 1e-14);
  const Matrix g = Diag({1, 3});
  const auto kr = OptimalMetricRate(-(g + 0.5 * Matrix::Identity(2, 2)));
  EXPECT_NEAR(kr.rate, 1.5, 1e-14);
}

TEST(OptimalMetricTest, MatchesIdentityRateAndOwnMetric) {
  for (int k = 0; k < 50; ++k) {
    Rng rng = MakeRng(110, k);
    const Eigen::Index dim = 5;
    const Matrix j = -RandomSpd(rng, dim);
    const auto opt = OptimalMetricRate(j);
    EXPECT_NEAR(opt.rate, ContractionRate(j, Metric::Identity(dim)), 1e-10);
    EXPECT_NEAR(opt.rate, ContractionRate(j, opt.metric), 1e-10);
    EXPECT_TRUE(MatricesNear(opt.metric.M(), SolveLyapunov(j, Matrix::Identity(dim, dim)).M(),
                             1e-10 * opt.metric.eig_max()));
  }
}

TEST(OptimalMetricTest, Errors) {
  Matrix asym(2, 2);
  asym << -1, 0.3, 0, -1;
  EXPECT_EQ(KindOf([&] { OptimalMetricRate(asym); }), ErrorKind::kNotSymmetric);
  EXPECT_EQ(KindOf([] { OptimalMetricRate(Diag({-1, 1})); }), ErrorKind::kNotNegativeDefinite);
}

}  // namespace
}  // namespace csl::matcalc
