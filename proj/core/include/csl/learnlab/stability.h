#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csl/dynsys/trajectory.h"
#include "csl/learnlab/bounds.h"
#include "csl/learnlab/dataset.h"
#include "csl/learnlab/gradient_flow.h"
#include "csl/learnlab/losses.h"
#include "csl/matcalc/metric.h"

namespace csl::learnlab {

struct StabilityOptions {
  double t_end = 10.0;
  double h = 1e-3;
  GradientFlowOptions flow;
  /// Metric for contraction and geodesic distances; defaults to the
  /// preconditioner when one is set, else the identity.
  std::optional<matcalc::Metric> metric;
  /// Extra examples in the sup over z, besides S ∪ S′.
  std::vector<Example> probe_set;
  /// Initial state of the S′ run; defaults to θ0 (C = 0).
  std::optional<Vector> theta0_prime;
  /// Reference point that initial conditions are drawn around (reported).
  std::optional<Vector> reference;
  int lipschitz_samples = 256;
  std::uint64_t seed = 0;
  /// Record the loss gap every `gap_stride` steps (0: final time only).
  int gap_stride = 0;
  /// Caller-supplied constants override the post-hoc estimates.
  std::optional<double> chi, lambda, lipschitz, xi;
  double rate_floor = 1e-8;
};

/// Paired-trajectory measurement of replace-one stability for one (S, i, z′).
struct StabilityReport {
  std::vector<double> times;
  std::vector<double> dist_curve;      // ‖θ_S(t) − θ_S′(t)‖
  std::vector<double> geo_curve;       // d_M(θ_S(t), θ_S′(t))
  std::vector<double> dist_envelope;   // distance bound χe^{−λt}C + χD/λ (or semi-contraction)
  std::vector<double> bound_curve;     // ε bound, loss units
  std::vector<double> gap_times;
  std::vector<double> gap_curve;       // sup over z of the loss gap at gap_times
  /// max over z ∈ S ∪ S′ ∪ probe of |ℓ(θ_S,z) − ℓ(θ_S′,z)| at t_end.
  double sup_loss_gap_over_probe = 0.0;
  std::string regime;   // "contraction" or "semi_contraction"
  std::string formula;
  double chi = 1.0, lambda = 0.0, lipschitz = 0.0, xi = 0.0, c = 0.0, disturbance = 0.0;
  std::int64_t n = 0;
  std::string omega;
  Vector reference;
  Vector theta_s_final, theta_sprime_final;
};

/// Integrates the flow on S and on S′ = ReplaceOne(S, i, z_new) from the same
/// stepper and time grid, records distance curves and the sup loss gap, and
/// overlays the contraction bound with χ, λ, L, ξ estimated on the visited
/// region unless supplied.
StabilityReport MeasureStability(const LossModel& loss, const TrainingSet& s, std::size_t i,
                                 const Example& z_new, const Vector& theta0,
                                 const StabilityOptions& options = {});

/// max over z of |ℓ(a, z) − ℓ(b, z)|.
double SupLossGap(const LossModel& loss, const std::vector<Example>& zs, const Vector& a,
                  const Vector& b);

}  // namespace csl::learnlab
