#include "csl/learnlab/lipschitz.h"

#include <algorithm>

#include "csl/error.h"

namespace csl::learnlab {

LipschitzEstimate EstimateLipschitz(const LossModel& loss,
                                    const std::vector<Example>& z_candidates,
                                    const dynsys::Region& omega,
                                    const LipschitzOptions& options) {
  if (options.n_samples < 1) Throw(ErrorKind::kInvalidArgument, "n_samples must be >= 1");
  if (z_candidates.empty()) Throw(ErrorKind::kInvalidArgument, "no candidate examples");

  double sup = 0.0;
  auto visit = [&](const Vector& theta) {
    for (const Example& z : z_candidates) sup = std::max(sup, loss.grad(theta, z).norm());
  };

  // Every reference point is paired with its reflection through the centre.
  // For a gradient norm that is convex in θ this makes the estimate
  // nondecreasing under concentric enlargement of Ω.
  Rng rng(options.seed);
  visit(omega.center());
  for (int s = 0; s < options.n_samples; ++s) {
    const Vector interior = omega.SampleReference(rng);
    const Vector boundary = omega.SampleReferenceBoundary(rng);
    visit(omega.FromReference(interior));
    visit(omega.FromReference(-interior));
    visit(omega.FromReference(boundary));
    visit(omega.FromReference(-boundary));
  }
  for (const Vector& p : options.extra_points) visit(p);

  return LipschitzEstimate{sup, options.xi_scale * sup, omega};
}

dynsys::Region DefaultOmega(const std::vector<const dynsys::Trajectory*>& trajectories) {
  std::vector<Vector> points;
  for (const auto* traj : trajectories) {
    points.insert(points.end(), traj->states().begin(), traj->states().end());
  }
  return dynsys::Region(dynsys::BoundingBall(points, 0.1));
}

}  // namespace csl::learnlab
