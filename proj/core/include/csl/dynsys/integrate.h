#pragma once

#include "csl/common.h"
#include "csl/dynsys/trajectory.h"
#include "csl/dynsys/vector_field.h"

namespace csl::dynsys {

constexpr double kDefaultStep = 1e-3;

/// One classical fourth-order Runge–Kutta step.
Vector Rk4Step(const VectorField& field, const Vector& x, double t, double h);

/// Fixed-step RK4 from t = 0 over ceil(t_end/h) steps of exactly h; every
/// state is recorded at t_k = k·h, so two runs with the same (t_end, h) are
/// time-aligned sample for sample.
///
/// Errors: kInvalidArgument for h ≤ 0 or t_end < 0; kDimensionMismatch;
/// kNonFinite when a state leaves the finite range.
Trajectory Integrate(const VectorField& field, const Vector& x0, double t_end,
                     double h = kDefaultStep);

/// Number of steps Integrate() takes for (t_end, h).
std::size_t StepCount(double t_end, double h);

}  // namespace csl::dynsys
