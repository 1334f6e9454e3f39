#pragma once

#include "csl/common.h"

namespace csl::matcalc {

/// A constant Riemannian metric M = TᵀT on R^dim.
///
/// Instances are immutable and can only be built through MakeMetric(), which
/// validates symmetry and positive definiteness. `chi()` is the exact
/// condition number of the factor T, used wherever an upper bound on the
/// condition number is required.
class Metric {
 public:
  static Metric Identity(Eigen::Index dim);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& M() const { return m_; }
  /// Upper-triangular factor with TᵀT = M.
  const Matrix& T() const { return t_; }
  double chi() const { return chi_; }
  double eig_min() const { return eig_min_; }
  double eig_max() const { return eig_max_; }

  /// ‖T v‖, the metric length of a tangent vector.
  double Norm(const Eigen::Ref<const Vector>& v) const;

 private:
  friend Metric MakeMetric(const Eigen::Ref<const Matrix>& m);
  Metric() = default;

  Matrix m_;
  Matrix t_;
  double chi_ = 1.0;
  double eig_min_ = 1.0;
  double eig_max_ = 1.0;
};

/// Errors: kNotSymmetric when max|M − Mᵀ| > 1e-9·‖M‖_F,
/// kNotPositiveDefinite when some eigenvalue ≤ 1e-12·eig_max.
Metric MakeMetric(const Eigen::Ref<const Matrix>& m);

/// True when M is symmetric within `rel_tol`·‖M‖_F.
bool IsSymmetric(const Eigen::Ref<const Matrix>& m, double rel_tol = 1e-9);

/// Geodesic distance for a constant metric: sqrt((x−y)ᵀM(x−y)).
double GeodesicDistance(const Metric& metric, const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& y);

/// Bounds on d_{m1}(x,y)/d_{m2}(x,y) over all x ≠ y.
struct DistortionBand {
  double lower = 1.0;
  double upper = 1.0;

  bool Contains(double ratio, double rel_slack = 0.0) const {
    return ratio >= lower * (1.0 - rel_slack) && ratio <= upper * (1.0 + rel_slack);
  }
};

/// [sqrt(μ₁/L₂), sqrt(L₁/μ₂)] where μᵢ, Lᵢ are the extremal eigenvalues.
DistortionBand ComputeDistortionBand(const Metric& m1, const Metric& m2);

}  // namespace csl::matcalc
