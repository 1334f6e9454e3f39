#include "csl/matcalc/metric.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <sstream>

#include "csl/error.h"

namespace csl::matcalc {

namespace {

void CheckSameDim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimensions " << a << " and " << b << " differ";
    Throw(ErrorKind::kDimensionMismatch, msg.str());
  }
}

}  // namespace

bool IsSymmetric(const Eigen::Ref<const Matrix>& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  return asym <= rel_tol * m.norm();
}

Metric Metric::Identity(Eigen::Index dim) {
  return MakeMetric(Matrix::Identity(dim, dim));
}

double Metric::Norm(const Eigen::Ref<const Vector>& v) const {
  CheckSameDim(v.size(), dim(), "Metric::Norm");
  return (t_.triangularView<Eigen::Upper>() * v).norm();
}

Metric MakeMetric(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    Throw(ErrorKind::kDimensionMismatch, "metric must be a nonempty square matrix");
  }
  if (!m.allFinite()) Throw(ErrorKind::kNonFinite, "metric has non-finite entries");
  if (!IsSymmetric(m, 1e-9)) {
    Throw(ErrorKind::kNotSymmetric, "metric asymmetry exceeds 1e-9·‖M‖_F");
  }

  Metric out;
  out.m_ = 0.5 * (m + m.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(out.m_, Eigen::EigenvaluesOnly);
  out.eig_min_ = eig.eigenvalues().minCoeff();
  out.eig_max_ = eig.eigenvalues().maxCoeff();
  if (!(out.eig_max_ > 0.0) || out.eig_min_ <= 1e-12 * out.eig_max_) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << out.eig_min_ << " vs largest " << out.eig_max_;
    Throw(ErrorKind::kNotPositiveDefinite, msg.str());
  }

  Eigen::LLT<Matrix> llt(out.m_);
  if (llt.info() != Eigen::Success) {
    Throw(ErrorKind::kNotPositiveDefinite, "Cholesky factorization failed");
  }
  out.t_ = llt.matrixU();

  Eigen::JacobiSVD<Matrix> svd(out.t_);
  const auto& s = svd.singularValues();
  out.chi_ = std::max(1.0, s.maxCoeff() / s.minCoeff());
  return out;
}

double GeodesicDistance(const Metric& metric, const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& y) {
  CheckSameDim(x.size(), y.size(), "GeodesicDistance");
  return metric.Norm(x - y);
}

DistortionBand ComputeDistortionBand(const Metric& m1, const Metric& m2) {
  CheckSameDim(m1.dim(), m2.dim(), "ComputeDistortionBand");
  return {std::sqrt(m1.eig_min() / m2.eig_max()),
          std::sqrt(m1.eig_max() / m2.eig_min())};
}

}  // namespace csl::matcalc
