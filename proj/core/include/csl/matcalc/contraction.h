#pragma once

#include "csl/common.h"
#include "csl/matcalc/metric.h"

namespace csl::matcalc {

/// Largest λ with MJ + JᵀM ⪯ −2λM for a constant metric and frozen Jacobian,
/// i.e. −½ times the largest generalized eigenvalue of (MJ + JᵀM, M).
/// Positive values certify contraction at the point where J was taken; zero
/// is the semi-contracting boundary.
double ContractionRate(const Eigen::Ref<const Matrix>& j, const Metric& metric);

/// Same quantity for a nonconstant metric at one point: the Ṁ term enters the
/// pencil as (Ṁ + MJ + JᵀM, M). Only used with Ṁ = 0 by the shipped tools.
double ContractionRate(const Eigen::Ref<const Matrix>& j, const Metric& metric,
                       const Eigen::Ref<const Matrix>& metric_dot);

struct OptimalMetric {
  Metric metric;
  double rate;
};

/// For symmetric negative-definite J, the metric M = ½(−J)⁻¹ (the solution of
/// the Lyapunov equation with Q = I) and its rate ½/λ_max(M) = λ_min(−J).
/// Errors: kNotSymmetric, kNotNegativeDefinite.
OptimalMetric OptimalMetricRate(const Eigen::Ref<const Matrix>& j);

}  // namespace csl::matcalc
