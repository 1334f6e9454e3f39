#pragma once

#include <cstdint>
#include <vector>

#include "csl/common.h"
#include "csl/learnlab/losses.h"
#include "csl/matcalc/metric.h"

namespace csl::learnlab {

struct KernelRidgeSystem {
  Matrix g;          // (1/n)φ(X)ᵀφ(X)
  Matrix j;          // −(G + αI)
  double lambda_i;   // λ_min(G) + α
  Vector solution;   // (G + αI)⁻¹(1/n)φ(X)ᵀy, empty when y is empty
};

/// Errors: kNonPositiveParameter for α ≤ 0, kDimensionMismatch.
KernelRidgeSystem MakeKernelRidgeSystem(const Matrix& x, const Vector& y, double alpha,
                                        const FeatureMap& features = IdentityFeatures());

struct MetricSample {
  double chi = 1.0;
  double lambda = 0.0;  // ½λ_min(Q)/λ_max(M)
  double ratio = 1.0;   // χ/λ
};

struct OptimalMetricReport {
  Matrix g;
  double alpha = 0.0;
  double lambda_i = 0.0;
  MetricSample identity;     // M = I
  MetricSample q_identity;   // Q = I, M = ½(G + αI)⁻¹
  /// |λ from the Q = I solve − (λ_min(G) + α)|.
  double q_identity_rate_error = 0.0;
  std::vector<MetricSample> samples;
  std::int64_t violations = 0;  // samples with χ_I/λ_I > χ_M/λ_M + tol
  double tolerance = 1e-9;
  double min_ratio_margin = 0.0;  // min over samples of χ_M/λ_M − χ_I/λ_I
};

/// For n_random SPD Q = AᵀA + 0.1·I, solves MJ + JᵀM = −Q with J = −(G + αI)
/// and records χ_M and λ_M = ½λ_min(Q)/λ_max(M). Sample k draws from its own
/// stream of `seed`.
OptimalMetricReport OptimalMetricExperiment(const Matrix& g, double alpha, int n_random,
                                            std::uint64_t seed, int threads = 1,
                                            double tolerance = 1e-9);

/// Fixed random G = (1/n)AᵀA for an n×d standard-normal A.
Matrix RandomGram(std::uint64_t seed, Eigen::Index d, Eigen::Index n);

}  // namespace csl::learnlab
