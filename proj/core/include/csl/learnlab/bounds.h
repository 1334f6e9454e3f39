#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "csl/learnlab/gradient_flow.h"
#include "csl/learnlab/lipschitz.h"

namespace csl::learnlab {

enum class PerturbationMode { kReplaceOne, kLeaveOneOut };

/// Disturbance bound on the flow for S′: 2ξ/n (replace-one) or ξ/n
/// (leave-one-out). Errors: kNonPositiveParameter for n < 1.
double DisturbanceBound(const LipschitzEstimate& lip, std::int64_t n,
                        PerturbationMode mode = PerturbationMode::kReplaceOne);
double DisturbanceBound(double xi, std::int64_t n,
                        PerturbationMode mode = PerturbationMode::kReplaceOne);

// Parameter blocks for the uniform-stability bounds. Where `t` is optional,
// leaving it empty yields the asymptotic value.

/// (a) χLe^{−λt}C + 2χLξ/(λn).
struct ContractionRegime {
  double chi = 1.0, lipschitz = 0.0, xi = 0.0, lambda = 0.0, c = 0.0;
  std::int64_t n = 1;
  std::optional<double> t;
};

/// (b) 2L²/(γn), gradient flow on a γ-strongly convex loss.
struct StronglyConvexRegime {
  double lipschitz = 0.0, gamma = 0.0;
  std::int64_t n = 1;
};

/// (c) sqrt(p_max³/p_min)·2L²/(γn), flow preconditioned by P.
struct PreconditionedRegime {
  double p_max = 1.0, p_min = 1.0, lipschitz = 0.0, gamma = 0.0;
  std::int64_t n = 1;
};

/// (d) (2L²/n)∫₀ᵀα(t)dt, convex loss with a learning-rate schedule; the
/// integral uses the composite trapezoid rule with step h.
struct ConvexScheduleRegime {
  double lipschitz = 0.0;
  std::int64_t n = 1;
  Schedule schedule;
  double horizon = 0.0;
  double h = 1e-3;
};

/// (e) 2χLξ/(ρ_min λ n), adaptive learning rate ρ(θ,t) ≥ ρ_min.
struct AdaptiveRateRegime {
  double chi = 1.0, lipschitz = 0.0, xi = 0.0, rho_min = 0.0, lambda = 0.0;
  std::int64_t n = 1;
};

/// (f) 4L²/(μn) under the PL condition.
struct PlRegime {
  double lipschitz = 0.0, mu = 0.0;
  std::int64_t n = 1;
};

/// (g) L·(‖θ_S − θ*_S‖ + sqrt(V(0)e^{−βt} + 2·lyap_lipschitz·ξ/(nβμ))) for a
/// Lyapunov function with quadratic growth V ≥ μ‖θ − θ*‖².
struct LyapunovGrowthRegime {
  double lipschitz = 0.0;
  double dist_to_optimum = 0.0;  // ‖θ_S − θ*_S‖
  double v0 = 0.0;
  double beta = 0.0;
  double lyap_lipschitz = 0.0;   // bound on ‖∂V/∂θ‖
  double xi = 0.0;
  double mu = 0.0;
  std::int64_t n = 1;
  std::optional<double> t;
};

using Regime = std::variant<ContractionRegime, StronglyConvexRegime, PreconditionedRegime,
                            ConvexScheduleRegime, AdaptiveRateRegime, PlRegime,
                            LyapunovGrowthRegime>;

/// Errors: kNonPositiveParameter when a rate, size or scale is not positive.
double StabilityBound(const Regime& regime);

/// Stable identifiers: "contraction", "strongly_convex", "preconditioned",
/// "convex_schedule", "adaptive_rate", "pl", "lyapunov_growth".
std::string_view RegimeName(const Regime& regime);
/// Human-readable formula for reports.
std::string_view RegimeFormula(const Regime& regime);
/// Builds a regime from its name and a flat parameter map (schedule-based
/// regimes use an exponential schedule "alpha0"/"decay").
/// Errors: kUnknownRegime, kInvalidArgument for missing parameters.
Regime MakeRegime(std::string_view name, const std::map<std::string, double>& params);

/// ∫₀ᵀ α(t) dt by the composite trapezoid rule.
double IntegrateSchedule(const Schedule& schedule, double horizon, double h);

}  // namespace csl::learnlab
