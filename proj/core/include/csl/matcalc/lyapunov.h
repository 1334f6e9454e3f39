#pragma once

#include "csl/common.h"
#include "csl/matcalc/metric.h"

namespace csl::matcalc {

/// Relative residual ‖MJ + JᵀM + Q‖_F / ‖Q‖_F.
double LyapunovResidual(const Eigen::Ref<const Matrix>& j,
                        const Eigen::Ref<const Matrix>& m,
                        const Eigen::Ref<const Matrix>& q);

/// Solves MJ + JᵀM = −Q for M with the Bartels–Stewart method (real Schur
/// form of J, quasi-triangular block back substitution, then up to three
/// rounds of residual refinement). Q only needs to be symmetric here.
///
/// Errors: kDimensionMismatch; kNotHurwitz if J has an eigenvalue with
/// nonnegative real part or a block system is singular; kResidualTooLarge if
/// the relative residual stays above 1e-10.
Matrix SolveLyapunovEquation(const Eigen::Ref<const Matrix>& j,
                             const Eigen::Ref<const Matrix>& q);

/// SolveLyapunovEquation for SPD Q, returning the solution as a Metric.
/// Also raises kNotSymmetric / kNotPositiveDefinite when Q is not SPD.
Metric SolveLyapunov(const Eigen::Ref<const Matrix>& j,
                     const Eigen::Ref<const Matrix>& q);

}  // namespace csl::matcalc
