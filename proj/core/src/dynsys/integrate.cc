#include "csl/dynsys/integrate.h"

#include <cmath>
#include <sstream>

#include "csl/error.h"

namespace csl::dynsys {

Vector Rk4Step(const VectorField& field, const Vector& x, double t, double h) {
  const Vector k1 = field(x, t);
  const Vector k2 = field(x + 0.5 * h * k1, t + 0.5 * h);
  const Vector k3 = field(x + 0.5 * h * k2, t + 0.5 * h);
  const Vector k4 = field(x + h * k3, t + h);
  return x + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

std::size_t StepCount(double t_end, double h) {
  // The 1e-9 slack keeps t_end = 1, h = 1e-3 at 1000 steps despite rounding.
  return static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
}

Trajectory Integrate(const VectorField& field, const Vector& x0, double t_end,
                     double h) {
  if (!(h > 0.0) || !std::isfinite(h)) Throw(ErrorKind::kInvalidArgument, "step h must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    Throw(ErrorKind::kInvalidArgument, "t_end must be finite and >= 0");
  }
  if (x0.size() != field.dim) {
    Throw(ErrorKind::kDimensionMismatch, "initial state does not match field dimension");
  }
  if (!x0.allFinite()) Throw(ErrorKind::kNonFinite, "initial state is not finite");

  const std::size_t steps = StepCount(t_end, h);
  std::vector<double> times;
  std::vector<Vector> states;
  times.reserve(steps + 1);
  states.reserve(steps + 1);
  times.push_back(0.0);
  states.push_back(x0);
  Vector x = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    x = Rk4Step(field, x, t, h);
    if (!x.allFinite()) {
      std::ostringstream msg;
      msg << "state became non-finite at t = " << t + h;
      Throw(ErrorKind::kNonFinite, msg.str());
    }
    times.push_back(static_cast<double>(k + 1) * h);
    states.push_back(x);
  }
  return Trajectory(std::move(times), std::move(states));
}

}  // namespace csl::dynsys
