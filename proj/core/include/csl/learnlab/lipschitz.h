#pragma once

#include <cstdint>
#include <vector>

#include "csl/dynsys/region.h"
#include "csl/dynsys/trajectory.h"
#include "csl/learnlab/losses.h"

namespace csl::learnlab {

/// L = sup over θ ∈ Ω and candidate z of ‖∇ℓ(θ, z)‖, estimated by sampling.
/// ξ bounds the per-example update map: ξ = scale·L (scale = ‖P⁻¹‖·sup α).
struct LipschitzEstimate {
  double L = 0.0;
  double xi = 0.0;
  dynsys::Region omega;
};

struct LipschitzOptions {
  int n_samples = 256;
  std::uint64_t seed = 0;
  double xi_scale = 1.0;
  /// Points that are always evaluated in addition to the samples (e.g. the
  /// visited trajectory states).
  std::vector<Vector> extra_points;
};

/// Samples Ω at its center and at antithetic pairs ±u of uniform interior and
/// boundary reference points mapped into Ω. The reference points depend only
/// on the seed, so for concentric balls and losses whose gradient norm is
/// convex in θ (affine gradients: quadratics, ridge) the estimate never
/// decreases when Ω grows.
LipschitzEstimate EstimateLipschitz(const LossModel& loss,
                                    const std::vector<Example>& z_candidates,
                                    const dynsys::Region& omega,
                                    const LipschitzOptions& options = {});

/// Ω defaults to the bounding ball of the observed trajectories, inflated by
/// 10%.
dynsys::Region DefaultOmega(const std::vector<const dynsys::Trajectory*>& trajectories);

}  // namespace csl::learnlab
