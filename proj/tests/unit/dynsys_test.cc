#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "csl/dynsys/certify.h"
#include "csl/dynsys/envelopes.h"
#include "csl/dynsys/integrate.h"
#include "csl/dynsys/region.h"
#include "csl/dynsys/trajectory.h"
#include "csl/dynsys/vector_field.h"
#include "csl/error.h"
#include "csl/learnlab/gradient_flow.h"
#include "csl/learnlab/losses.h"
#include "csl/matcalc/contraction.h"
#include "csl/matcalc/lyapunov.h"
#include "test_util.h"

namespace csl::dynsys {
namespace {

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

Vector Scalar(double v) { return Vector::Constant(1, v); }

TEST(IntegrateTest, ScalarDecay) {
  const auto traj = Integrate(LinearField(-Matrix::Identity(1, 1)), Scalar(1.0), 1.0, 1e-3);
  EXPECT_NEAR(traj.back()(0), std::exp(-1.0), 1e-9);
  EXPECT_EQ(traj.size(), 1001u);
  EXPECT_NEAR(traj.times().back(), 1.0, 1e-12);
}

TEST(IntegrateTest, ZeroField) {
  const Vector c = Eigen::Vector3d(1, -2, 0.5);
  const auto traj = Integrate(LinearField(Matrix::Zero(3, 3)), c, 2.0, 0.1);
  for (const Vector& x : traj.states()) EXPECT_EQ(x, c);
}

TEST(IntegrateTest, FinalTimeWithinOneStep) {
  const auto traj = Integrate(LinearField(Matrix::Zero(1, 1)), Scalar(0), 1.05, 0.1);
  EXPECT_LE(std::abs(traj.times().back() - 1.05), 0.1);
  EXPECT_GE(traj.times().back(), 1.05 - 1e-12);
  EXPECT_EQ(Integrate(LinearField(Matrix::Zero(1, 1)), Scalar(0), 0.0, 0.1).size(), 1u);
}

TEST(IntegrateTest, MatchesMatrixExponential) {
  for (int k = 0; k < 10; ++k) {
    Rng rng = MakeRng(201, k);
    const Eigen::Index dim = 2 + k % 4;
    const Matrix j = test::RandomHurwitz(rng, dim, 0.3);
    const Vector x0 = StandardNormalVector(rng, dim);
    const auto traj = Integrate(LinearField(j), x0, 2.0, 1e-3);
    EXPECT_LE((traj.back() - test::Expm(2.0 * j) * x0).norm(), 1e-9 * (1 + x0.norm()));
  }
}

TEST(IntegrateTest, ContractingDistanceDecaysAtRate) {
  for (int k = 0; k < 10; ++k) {
    Rng rng = MakeRng(202, k);
    const Eigen::Index dim = 3;
    Matrix j = -RandomSpd(rng, dim);
    const double lambda = matcalc::ContractionRate(j, matcalc::Metric::Identity(dim));
    const Vector a = StandardNormalVector(rng, dim), b = StandardNormalVector(rng, dim);
    const auto ta = Integrate(LinearField(j), a, 3.0, 1e-3);
    const auto tb = Integrate(LinearField(j), b, 3.0, 1e-3);
    const double d0 = (a - b).norm();
    for (std::size_t s = 1; s < ta.size(); s += 100) {
      const double t = ta.times()[s];
      const double observed = -std::log((ta.states()[s] - tb.states()[s]).norm() / d0) / t;
      EXPECT_GE(observed, lambda - 1e-3);
    }
  }
}

TEST(IntegrateTest, Errors) {
  const auto f = LinearField(-Matrix::Identity(1, 1));
  EXPECT_EQ(KindOf([&] { Integrate(f, Scalar(1), 1.0, 0.0); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([&] { Integrate(f, Scalar(1), -1.0, 0.1); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([&] { Integrate(f, Vector::Zero(2), 1.0, 0.1); }),
            ErrorKind::kDimensionMismatch);
  const auto blowup = LinearField(1e3 * Matrix::Identity(1, 1));
  EXPECT_EQ(KindOf([&] { Integrate(blowup, Scalar(1), 10.0, 0.1); }), ErrorKind::kNonFinite);
}

TEST(TrajectoryTest, ValidationAndCsv) {
  EXPECT_EQ(KindOf([] { Trajectory({0.0, 0.0}, {Scalar(1), Scalar(2)}); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([] { Trajectory({0.0}, {Scalar(1), Scalar(2)}); }),
            ErrorKind::kDimensionMismatch);
  Trajectory t({0.0, 0.5}, {Eigen::Vector2d(1, 2), Eigen::Vector2d(0.1, -3)});
  EXPECT_EQ(t.ToCsv(), "t,x0,x1\n0,1,2\n0.5,0.1,-3\n");
  EXPECT_TRUE(t.At(0.25).isApprox(Eigen::Vector2d(0.55, -0.5)));
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(std::stod(FormatDouble(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(VectorFieldTest, JacobianMatchesFiniteDifferences) {
  const auto rosen = learnlab::RosenbrockNewtonField(1e-3);
  const auto grad = learnlab::RosenbrockGradientField();
  for (int k = 0; k < 20; ++k) {
    Rng rng = MakeRng(203, k);
    const Vector x = Eigen::Vector2d(1, 1) + 0.3 * StandardNormalVector(rng, 2);
    EXPECT_LE(JacobianRelativeError(grad, x, 0.0), 1e-6);
    EXPECT_LE(JacobianRelativeError(rosen, x, 0.0), 1e-6);
  }
}

TEST(RegionTest, SamplesStayInside) {
  Rng rng = MakeRng(204, 0);
  const Region ball(Ball{Eigen::Vector2d(1, 1), 0.5});
  const Region box(Box{Eigen::Vector2d(-1, 0), Eigen::Vector2d(1, 2)});
  for (int k = 0; k < 500; ++k) {
    EXPECT_LE((ball.Sample(rng) - Eigen::Vector2d(1, 1)).norm(), 0.5 + 1e-12);
    const Vector p = box.Sample(rng);
    EXPECT_TRUE(p(0) >= -1 && p(0) <= 1 && p(1) >= 0 && p(1) <= 2);
  }
  const auto bb = BoundingBall({Eigen::Vector2d(0, 0), Eigen::Vector2d(2, 0)}, 0.1);
  EXPECT_TRUE(bb.center.isApprox(Eigen::Vector2d(1, 0)));
  EXPECT_NEAR(bb.radius, 1.1, 1e-12);
}

TEST(CertifyTest, IsotropicQuadratic) {
  const double gamma = 0.7;
  const auto loss = learnlab::IsotropicQuadraticLoss(gamma, 3);
  const learnlab::TrainingSet s({{Vector::Zero(3), 0.0, 0}});
  const auto field = learnlab::GradientFlowField(loss, s);
  CertifyOptions o;
  o.n_samples = 64;
  const auto cert = CertifyContraction(field, matcalc::Metric::Identity(3),
                                       Ball{Vector::Zero(3), 5.0}, o);
  EXPECT_NEAR(cert.lambda_min_observed, gamma, 1e-12);
  EXPECT_EQ(cert.verdict, Verdict::kContracting);
  EXPECT_EQ(cert.n_samples, 64);
}

TEST(CertifyTest, RosenbrockAwayFromValleyIsNotContracting) {
  const auto cert = CertifyContraction(learnlab::RosenbrockGradientField(),
                                       matcalc::Metric::Identity(2), Ball{Vector::Zero(2), 2.0});
  EXPECT_EQ(cert.verdict, Verdict::kNotContracting);
  // Oracle: −∇²f at the worst point has a positive eigenvalue.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(-learnlab::RosenbrockHessian(cert.worst_point));
  EXPECT_GT(eig.eigenvalues().maxCoeff(), 0.0);
  EXPECT_NEAR(-eig.eigenvalues().maxCoeff(), cert.lambda_min_observed, 1e-9);
}

TEST(CertifyTest, RosenbrockNearMinimum) {
  // ∇²f is positive definite only below y = x² + 0.005, so the contracting
  // identity-metric ball around (1,1) has radius about 2.4e-3.
  const Vector opt = Vector::Ones(2);
  const auto inside = CertifyContraction(learnlab::RosenbrockGradientField(),
                                         matcalc::Metric::Identity(2), Ball{opt, 1e-3});
  EXPECT_EQ(inside.verdict, Verdict::kContracting);
  EXPECT_GT(inside.lambda_min_observed, 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(learnlab::RosenbrockHessian(opt));
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
  const auto wide = CertifyContraction(learnlab::RosenbrockGradientField(),
                                       matcalc::Metric::Identity(2), Ball{opt, 0.05});
  EXPECT_EQ(wide.verdict, Verdict::kNotContracting);
}

TEST(CertifyTest, VerdictThresholds) {
  EXPECT_EQ(ClassifyRate(1e-7, 1e-8), Verdict::kContracting);
  EXPECT_EQ(ClassifyRate(1e-8, 1e-8), Verdict::kSemiContracting);
  EXPECT_EQ(ClassifyRate(-1e-8, 1e-8), Verdict::kSemiContracting);
  EXPECT_EQ(ClassifyRate(-1e-7, 1e-8), Verdict::kNotContracting);
  const auto cert = CertifyContraction(LinearField(Matrix::Zero(2, 2)),
                                       matcalc::Metric::Identity(2), Ball{Vector::Zero(2), 1.0});
  EXPECT_EQ(cert.verdict, Verdict::kSemiContracting);
}

TEST(EnvelopeTest, Continuous) {
  EXPECT_NEAR(RobustnessEnvelopeContinuous(2.0, 0.5, 3.0, 0.0, 1.0), 6.0 * std::exp(-0.5), 1e-15);
  EXPECT_NEAR(RobustnessEnvelopeContinuous(2.0, 0.5, 3.0, 0.1, 1e6), 0.4, 1e-15);
  EXPECT_NEAR(RobustnessEnvelopeContinuous(1.0, 2.0, 1.0, 0.5, 1.0), std::exp(-2.0) + 0.25, 1e-15);
  EXPECT_NEAR(RobustnessEnvelopeContinuous(1.0, 2.0, 1.0, 0.5, 1.0), 0.3853, 5e-5);
  EXPECT_EQ(KindOf([] { RobustnessEnvelopeContinuous(1.0, 0.0, 1.0, 0.0, 1.0); }),
            ErrorKind::kNonPositiveRate);
}

TEST(EnvelopeTest, Discrete) {
  EXPECT_DOUBLE_EQ(RobustnessEnvelopeDiscrete(1.0, 0.5, 1.0, 0.0, 3), 0.125);
  EXPECT_NEAR(RobustnessEnvelopeDiscrete(1.5, 0.8, 2.0, 0.3, 0), 3.0 + 0.3 * 1.5 / 0.2, 1e-14);
  EXPECT_NEAR(RobustnessEnvelopeDiscrete(2.0, 0.9, 1.0, 0.01, 50), 2 * std::pow(0.9, 50) + 0.2,
              1e-14);
  EXPECT_NEAR(RobustnessEnvelopeDiscrete(2.0, 0.9, 1.0, 0.01, 50), 0.210308, 1e-6);
  EXPECT_EQ(KindOf([] { RobustnessEnvelopeDiscrete(1.0, 1.0, 1.0, 0.0, 1); }),
            ErrorKind::kRateOutOfRange);
  EXPECT_EQ(KindOf([] { RobustnessEnvelopeDiscrete(1.0, 0.0, 1.0, 0.0, 1); }),
            ErrorKind::kRateOutOfRange);
}

TEST(EnvelopeTest, ContinuousDominatesPerturbedLinearSystems) {
  for (int k = 0; k < 100; ++k) {
    Rng rng = MakeRng(205, k);
    const Eigen::Index dim = 2 + k % 3;
    const Matrix j = -RandomSpd(rng, dim, 0.3);
    const double lambda = matcalc::ContractionRate(j, matcalc::Metric::Identity(dim));
    const double d = 0.2;
    const Vector dir = StandardNormalVector(rng, dim).normalized();
    VectorField pair;
    pair.dim = 2 * dim;
    pair.eval = [&](const Vector& x, double t) {
      Vector out(2 * dim);
      out.head(dim) = j * x.head(dim);
      out.tail(dim) = j * x.tail(dim) + d * std::cos(3 * t) * dir;
      return out;
    };
    Vector x0(2 * dim);
    x0 << StandardNormalVector(rng, dim), StandardNormalVector(rng, dim);
    const auto traj = Integrate(pair, x0, 4.0, 1e-2);
    const double r0 = (x0.head(dim) - x0.tail(dim)).norm();
    for (std::size_t s = 0; s < traj.size(); ++s) {
      const auto& x = traj.states()[s];
      EXPECT_LE((x.head(dim) - x.tail(dim)).norm(),
                RobustnessEnvelopeContinuous(1.0, lambda, r0, d, traj.times()[s]) * (1 + 1e-6));
    }
  }
}

TEST(EnvelopeTest, DiscreteDominatesPerturbedLinearMaps) {
  for (int k = 0; k < 100; ++k) {
    Rng rng = MakeRng(206, k);
    const Eigen::Index dim = 2 + k % 3;
    Matrix a = StandardNormalMatrix(rng, dim, dim);
    Eigen::JacobiSVD<Matrix> svd(a);
    const double mu = 0.8;
    a *= mu / svd.singularValues()(0);
    Vector x = StandardNormalVector(rng, dim), y = StandardNormalVector(rng, dim);
    const double r0 = (x - y).norm(), d = 0.05;
    for (std::int64_t t = 0; t < 100; ++t) {
      EXPECT_LE((x - y).norm(), RobustnessEnvelopeDiscrete(1.0, mu, r0, d, t) * (1 + 1e-6));
      x = a * x;
      y = a * y + d * StandardNormalVector(rng, dim).normalized();
    }
  }
}

TEST(EnvelopeTest, RegionRequirements) {
  EXPECT_DOUBLE_EQ(LocalRegionRequirement(0.3, 1.0, 2.0, 0.0), 0.6);
  EXPECT_DOUBLE_EQ(LocalRegionRequirement(1.0, 2.0, 1.0, 1.0), 5.0);
  EXPECT_NEAR(OptimizerRegionRequirement(0.1, 1.0, 1.0, 1.0, 100), 0.22, 1e-15);
  EXPECT_NEAR(LocalRegionRequirement(0.1, 1.0, 1.0, 0.02, RegionRequirement::kOptimizer), 0.22,
              1e-15);
}

TEST(EnvelopeTest, SemiContraction) {
  EXPECT_EQ(SemiContractionBound(2.0, 1.0, 10, 0.0, 0.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(SemiContractionBound(1.0, 1.0, 10, 5.0, 0.0, 1.0), 1.0);
  const double a = SemiContractionBound(1.5, 0.7, 40, 3.0, 0.0, 2.0);
  EXPECT_NEAR(SemiContractionBound(1.5, 0.7, 80, 3.0, 0.0, 2.0), a / 2, 1e-15);
}

TEST(PartialContractionTest, TrivialVirtualSystemMatchesDirectCertificate) {
  Rng rng = MakeRng(207, 0);
  const Matrix j = test::RandomHurwitz(rng, 3, 0.5);
  const auto field = LinearField(j);
  const auto metric = matcalc::SolveLyapunov(j, Matrix::Identity(3, 3));
  const auto frozen = Integrate(field, Vector::Ones(3), 1.0, 0.01);
  CertifyOptions o;
  o.n_samples = 256;
  o.times = {0.0};
  const Region region(Ball{Vector::Zero(3), 1.0});
  const auto direct = CertifyContraction(field, metric, region, o);
  const auto partial = PartialContractionCheck(
      field, [&](const Trajectory&) { return field; }, frozen, metric, region, o);
  EXPECT_EQ(partial.lambda_min_observed, direct.lambda_min_observed);
  EXPECT_EQ(partial.verdict, direct.verdict);
}

TEST(PartialContractionTest, AdaptiveRate) {
  // θ̇ = −ρ(θ, t)∇L with ρ ≥ ρ_min and L strongly convex (γ = min curvature).
  const double rho_min = 0.4, gamma = 0.5;
  const Matrix h = Eigen::Vector2d(gamma, 2.0).asDiagonal();
  auto rho = [rho_min](const Vector& x, double t) {
    return rho_min + 0.5 * (1 + std::sin(x(0) + t)) + 0.1 * x.squaredNorm();
  };
  const VectorField f = WithFiniteDifferenceJacobian(
      2, [&](const Vector& x, double t) -> Vector { return -rho(x, t) * (h * x); });
  const Trajectory frozen = Integrate(f, Eigen::Vector2d(1.0, -1.5), 5.0, 1e-2);
  const VirtualFieldBuilder builder = [&](const Trajectory& xs) {
    VectorField g;
    g.dim = 2;
    g.eval = [&h, &rho, xs](const Vector& y, double t) -> Vector {
      return -rho(xs.At(t), t) * (h * y);
    };
    g.jacobian = [&h, &rho, xs](const Vector&, double t) -> Matrix {
      return -rho(xs.At(t), t) * h;
    };
    return g;
  };
  CertifyOptions o;
  o.n_samples = 512;
  const auto cert = PartialContractionCheck(f, builder, frozen, matcalc::Metric::Identity(2),
                                            Ball{Vector::Zero(2), 2.0}, o);
  EXPECT_EQ(cert.verdict, Verdict::kContracting);
  EXPECT_GE(cert.lambda_min_observed, rho_min * gamma - 1e-12);
}

TEST(PartialContractionTest, InconsistentBuilder) {
  const auto field = LinearField(-Matrix::Identity(2, 2));
  const auto frozen = Integrate(field, Vector::Ones(2), 1.0, 0.1);
  const auto wrong = LinearField(-2 * Matrix::Identity(2, 2));
  EXPECT_EQ(KindOf([&] {
              PartialContractionCheck(
                  field, [&](const Trajectory&) { return wrong; }, frozen,
                  matcalc::Metric::Identity(2), Ball{Vector::Zero(2), 1.0});
            }),
            ErrorKind::kVirtualMismatch);
}

}  // namespace
}  // namespace csl::dynsys
