#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "csl/common.h"
#include "csl/dynsys/region.h"
#include "csl/dynsys/trajectory.h"
#include "csl/dynsys/vector_field.h"
#include "csl/matcalc/metric.h"

namespace csl::dynsys {

enum class Verdict { kContracting, kSemiContracting, kNotContracting };

std::string_view ToString(Verdict v);

/// Sampled evidence that ṀJ + JᵀM ⪯ −2λM holds over a region. This is a
/// record of what was checked, not a proof over the whole region.
struct ContractionCertificate {
  matcalc::Metric metric;
  double lambda_min_observed = 0.0;
  int n_samples = 0;
  Region region;
  Vector worst_point;
  double worst_time = 0.0;
  double rate_floor = 1e-8;
  Verdict verdict = Verdict::kNotContracting;
};

struct CertifyOptions {
  int n_samples = 4096;
  /// Times at which the Jacobian is evaluated; sample s uses
  /// times[s % times.size()]. Empty means {0} for CertifyContraction and the
  /// frozen trajectory's time grid for PartialContractionCheck.
  std::vector<double> times;
  std::uint64_t seed = 0;
  double rate_floor = 1e-8;
};

Verdict ClassifyRate(double lambda, double rate_floor);

/// λ_min over sampled (x, t) of ContractionRate(J(x,t), metric), with the
/// argmin recorded. Errors propagate from the field.
ContractionCertificate CertifyContraction(const VectorField& field,
                                          const matcalc::Metric& metric,
                                          const Region& region,
                                          const CertifyOptions& options = {});

/// Builds the virtual system ẏ = g(y, x(t), t) for a frozen x-trajectory.
using VirtualFieldBuilder = std::function<VectorField(const Trajectory& frozen)>;

/// Partial contraction: checks g(x, x, t) = f(x, t) along `frozen` (to 1e-9
/// relative, else kVirtualMismatch), then certifies the y-system over the
/// region exactly as CertifyContraction does.
ContractionCertificate PartialContractionCheck(const VectorField& field,
                                               const VirtualFieldBuilder& builder,
                                               const Trajectory& frozen,
                                               const matcalc::Metric& metric,
                                               const Region& region,
                                               const CertifyOptions& options = {});

}  // namespace csl::dynsys
