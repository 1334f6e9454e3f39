#pragma once

#include <functional>
#include <optional>

#include "csl/dynsys/vector_field.h"
#include "csl/learnlab/dataset.h"
#include "csl/learnlab/losses.h"
#include "csl/matcalc/metric.h"

namespace csl::learnlab {

/// Learning-rate schedule α(t) ≥ 0.
using Schedule = std::function<double(double t)>;

Schedule ConstantSchedule(double alpha);
/// α₀·e^{−kt}.
Schedule ExponentialSchedule(double alpha0, double decay);

struct GradientFlowOptions {
  std::optional<matcalc::Metric> preconditioner;  // P in θ̇ = −P⁻¹∇L
  Schedule schedule;                              // empty means α ≡ 1
  /// Fail with kMissingHessian rather than fall back to finite differences.
  bool require_exact_jacobian = false;
};

/// θ̇ = −α(t)·P⁻¹·(1/n)Σᵢ∇ℓ(θ, zᵢ). The Jacobian uses per-example Hessians
/// when the loss provides them and central differences otherwise.
dynsys::VectorField GradientFlowField(const LossModel& loss, const TrainingSet& s,
                                      const GradientFlowOptions& options = {});

/// The per-example update map g(θ, z) = −α(t)P⁻¹∇ℓ(θ, z), so that the flow is
/// the average of g over S.
Vector PerExampleUpdate(const LossModel& loss, const GradientFlowOptions& options,
                        const Vector& theta, const Example& z, double t);

/// ‖P⁻¹‖₂·sup_t α(t) over the sampled horizon; multiplies L to give ξ.
double UpdateScale(const GradientFlowOptions& options, double horizon);

/// Damped Newton flow θ̇ = −(∇²f + εI)⁻¹∇f on the Rosenbrock surface, with
/// its exact Jacobian (third derivatives included).
dynsys::VectorField RosenbrockNewtonField(double epsilon = 1e-3);

/// Plain gradient flow θ̇ = −∇f on the Rosenbrock surface.
dynsys::VectorField RosenbrockGradientField();

}  // namespace csl::learnlab
