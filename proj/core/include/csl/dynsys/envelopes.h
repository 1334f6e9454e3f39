#pragma once

#include <cstdint>

namespace csl::dynsys {

// Distance envelopes between a contracting system and a disturbed copy,
// R(t) = ‖x(t) − x_p(t)‖ with ‖d‖ ≤ D.

/// χR(0)e^{−λt} + Dχ/λ. Errors: kNonPositiveRate if λ ≤ 0 (use
/// SemiContractionBound), kInvalidArgument for χ < 1 or negative inputs.
double RobustnessEnvelopeContinuous(double chi, double lambda, double r0, double d,
                                    double t);

/// χR(0)μᵗ + Dχ/(1−μ). Errors: kRateOutOfRange if μ ∉ (0,1).
double RobustnessEnvelopeDiscrete(double chi, double mu, double r0, double d,
                                  std::int64_t t);

/// Expected-initialization form: initial conditions within a ball of radius
/// C/2 give E[R(t)] ≤ χCe^{−λt} + Dχ/λ.
double ExpectedRobustnessEnvelope(double chi, double lambda, double c, double d,
                                  double t);

enum class RegionRequirement {
  /// b(χ+1) + χD/λ: the outer ball a disturbed trajectory cannot leave.
  kGeneral,
  /// 2bχ + χD/λ, the optimizer case with D = 2ξ/n.
  kOptimizer,
};

/// Minimum outer contraction-region radius B for an inner ball of radius b.
double LocalRegionRequirement(double b, double chi, double lambda, double d,
                              RegionRequirement kind = RegionRequirement::kGeneral);

/// Optimizer variant with D = 2ξ/n: 2bχ + 2χξ/(λn).
double OptimizerRegionRequirement(double b, double chi, double lambda, double xi,
                                  std::int64_t n);

/// Semi-contracting (λ ≥ 0) stability bound L[(2χξ/n)T + R(0)].
double SemiContractionBound(double chi, double xi, std::int64_t n, double horizon,
                            double r0, double lipschitz);

}  // namespace csl::dynsys
