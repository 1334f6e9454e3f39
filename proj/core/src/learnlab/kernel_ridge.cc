#include "csl/learnlab/kernel_ridge.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "csl/error.h"
#include "csl/matcalc/lyapunov.h"
#include "csl/parallel.h"
#include "csl/random.h"

namespace csl::learnlab {

namespace {

double LambdaMin(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

MetricSample SampleFor(const matcalc::Metric& m, const Matrix& q) {
  MetricSample s;
  s.chi = m.chi();
  s.lambda = 0.5 * LambdaMin(q) / m.eig_max();
  s.ratio = s.chi / s.lambda;
  return s;
}

}  // namespace

KernelRidgeSystem MakeKernelRidgeSystem(const Matrix& x, const Vector& y, double alpha,
                                        const FeatureMap& features) {
  if (!(alpha > 0.0)) Throw(ErrorKind::kNonPositiveParameter, "alpha must be > 0");
  if (x.rows() == 0 || x.cols() == 0) Throw(ErrorKind::kInvalidArgument, "X is empty");
  if (y.size() != 0 && y.size() != x.rows()) {
    Throw(ErrorKind::kDimensionMismatch, "y length differs from the rows of X");
  }
  const double n = static_cast<double>(x.rows());
  const Matrix phi = x.unaryExpr(features.apply);
  KernelRidgeSystem sys;
  sys.g = phi.transpose() * phi / n;
  sys.g = 0.5 * (sys.g + sys.g.transpose()).eval();
  const Matrix a = sys.g + alpha * Matrix::Identity(sys.g.rows(), sys.g.cols());
  sys.j = -a;
  sys.lambda_i = LambdaMin(sys.g) + alpha;
  if (y.size() != 0) sys.solution = a.llt().solve(phi.transpose() * y / n);
  return sys;
}

OptimalMetricReport OptimalMetricExperiment(const Matrix& g, double alpha, int n_random,
                                            std::uint64_t seed, int threads,
                                            double tolerance) {
  if (n_random < 1) Throw(ErrorKind::kInvalidArgument, "n_random must be >= 1");
  if (!(alpha > 0.0)) Throw(ErrorKind::kNonPositiveParameter, "alpha must be > 0");
  const Eigen::Index d = g.rows();
  if (g.cols() != d) Throw(ErrorKind::kDimensionMismatch, "G must be square");

  OptimalMetricReport report;
  report.g = g;
  report.alpha = alpha;
  report.tolerance = tolerance;
  const Matrix j = -(g + alpha * Matrix::Identity(d, d));
  report.lambda_i = LambdaMin(g) + alpha;
  report.identity = {1.0, report.lambda_i, 1.0 / report.lambda_i};

  const Matrix eye = Matrix::Identity(d, d);
  report.q_identity = SampleFor(matcalc::SolveLyapunov(j, eye), eye);
  report.q_identity_rate_error = std::abs(report.q_identity.lambda - report.lambda_i);

  report.samples.resize(static_cast<std::size_t>(n_random));
  ParallelFor(static_cast<std::size_t>(n_random), threads, [&](std::size_t k) {
    Rng rng = MakeRng(seed, k);
    const Matrix q = RandomSpd(rng, d);
    report.samples[k] = SampleFor(matcalc::SolveLyapunov(j, q), q);
  });

  report.min_ratio_margin = std::numeric_limits<double>::infinity();
  for (const MetricSample& s : report.samples) {
    const double margin = s.ratio - report.identity.ratio;
    report.min_ratio_margin = std::min(report.min_ratio_margin, margin);
    if (margin < -tolerance) ++report.violations;
  }
  return report;
}

Matrix RandomGram(std::uint64_t seed, Eigen::Index d, Eigen::Index n) {
  Rng rng = MakeRng(seed, 0);
  const Matrix a = StandardNormalMatrix(rng, n, d);
  return a.transpose() * a / static_cast<double>(n);
}

}  // namespace csl::learnlab
