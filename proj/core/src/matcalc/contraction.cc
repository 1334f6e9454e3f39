#include "csl/matcalc/contraction.h"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "csl/error.h"

namespace csl::matcalc {

double ContractionRate(const Eigen::Ref<const Matrix>& j, const Metric& metric,
                       const Eigen::Ref<const Matrix>& metric_dot) {
  const Eigen::Index n = metric.dim();
  if (j.rows() != n || j.cols() != n || metric_dot.rows() != n ||
      metric_dot.cols() != n) {
    Throw(ErrorKind::kDimensionMismatch, "Jacobian and metric sizes differ");
  }
  if (!j.allFinite()) Throw(ErrorKind::kNonFinite, "Jacobian has non-finite entries");
  const Matrix& m = metric.M();
  const Matrix lhs = metric_dot + m * j + j.transpose() * m;
  const Matrix sym = 0.5 * (lhs + lhs.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(sym, m, Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    Throw(ErrorKind::kNonFinite, "generalized eigenproblem failed");
  }
  return -0.5 * ges.eigenvalues().maxCoeff();
}

double ContractionRate(const Eigen::Ref<const Matrix>& j, const Metric& metric) {
  return ContractionRate(j, metric, Matrix::Zero(metric.dim(), metric.dim()));
}

OptimalMetric OptimalMetricRate(const Eigen::Ref<const Matrix>& j) {
  if (j.rows() != j.cols() || j.rows() == 0) {
    Throw(ErrorKind::kDimensionMismatch, "J must be a nonempty square matrix");
  }
  if (!IsSymmetric(j, 1e-9)) Throw(ErrorKind::kNotSymmetric, "J is not symmetric");
  const Matrix neg = -0.5 * (j + j.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(neg, Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues().minCoeff();
  if (!(smallest > 1e-12 * eig.eigenvalues().cwiseAbs().maxCoeff())) {
    Throw(ErrorKind::kNotNegativeDefinite, "J is not negative definite");
  }
  Metric metric = MakeMetric(0.5 * neg.inverse());
  const double rate = 0.5 / metric.eig_max();
  return {std::move(metric), rate};
}

}  // namespace csl::matcalc
