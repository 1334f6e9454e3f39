#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "csl/dynsys/trajectory.h"
#include "csl/dynsys/vector_field.h"
#include "csl/learnlab/dataset.h"
#include "csl/learnlab/losses.h"
#include "csl/matcalc/metric.h"
#include "csl/random.h"
#include "csl/sgdlab/realization.h"

namespace csl::sgdlab {

/// Per-example update map g(θ, z); one SGD step averages g over the batch.
struct UpdateMap {
  std::string name;
  std::function<Vector(const Vector& theta, const learnlab::Example& z)> g;
  /// ξ per unit of gradient norm: sup‖g(θ,z) − θ‖ = scale·sup‖∇ℓ‖.
  double xi_scale = 1.0;
};

/// g(θ, z) = θ − η∇ℓ(θ, z): the averaged update is the usual mini-batch step.
UpdateMap GradientStepMap(const learnlab::LossModel& loss, double eta);

/// θ_{t+1} = (1/b)Σ g(θ_t, z) over the batch; repeated examples count with
/// multiplicity. Errors: kInvalidArgument on an empty batch, kNonFinite.
Vector SgdUpdate(const UpdateMap& map, const std::vector<const learnlab::Example*>& batch,
                 const Vector& theta);
Vector SgdUpdate(const UpdateMap& map, const std::vector<learnlab::Example>& batch,
                 const Vector& theta);

/// One step on S using the batch realization's indices at step t.
Vector SgdStep(const UpdateMap& map, const learnlab::TrainingSet& s,
               const BatchRealization& realization, std::int64_t t, const Vector& theta);

/// x_{t+1} = SgdStep(S, {realization, b, n, sampler}, t, x).
dynsys::DiscreteMap SgdDiscreteMap(const UpdateMap& map, const learnlab::TrainingSet& s,
                                   std::int64_t b, Sampler sampler);

enum class Event : char { kA = 'A', kB = 'B' };

struct PairedRun {
  dynsys::Trajectory traj_s, traj_sprime;  // times 0..T
  std::vector<Event> events;               // events[t]: batch of step t → t+1
  std::vector<double> dist_curve;
  std::vector<double> geo_curve;
  /// ‖update_S(θ) − update_S′(θ)‖ at θ = θ_S(t); zero on A steps.
  std::vector<double> disturbance;
};

/// Runs SGD on S and S′ = ReplaceOne(S, i, z_new) for `steps` steps with the
/// same batch indices. θ0_prime defaults to θ0.
PairedRun RunPaired(const UpdateMap& map, const learnlab::TrainingSet& s, std::size_t i,
                    const learnlab::Example& z_new, const Vector& theta0, std::int64_t steps,
                    const BatchRealization& realization, const matcalc::Metric& metric,
                    const std::optional<Vector>& theta0_prime = std::nullopt);

struct MuOptions {
  int n_probe = 256;
  std::uint64_t seed = 0;
  /// Steps t are drawn uniformly from [0, max_step).
  std::int64_t max_step = 1000;
  /// Event-B classifier for conditional estimates: true when the step's
  /// batch contains the replaced index. Empty disables conditioning.
  std::function<bool(std::int64_t t, std::uint64_t realization)> event_b;
};

struct MuEstimate {
  double mu = 0.0;                // mean of d(f(x),f(y))/d(x,y)
  double standard_error = 0.0;
  std::optional<double> mu_given_a, mu_given_b;
  int used = 0, skipped = 0;
  bool not_contracting = false;   // mu ≥ 1
};

using PairSampler = std::function<std::pair<Vector, Vector>(Rng& rng)>;

/// Contraction-in-expectation estimate under shared realizations. Probe k
/// draws (x, y), a step t and a realization from stream k of `seed`.
/// Pairs with d(x, y) = 0 are skipped. Errors: kDegeneratePair if all are,
/// kInvalidArgument if n_probe < 1.
MuEstimate EstimateMu(const dynsys::DiscreteMap& f, const PairSampler& pairs,
                      const matcalc::Metric& metric, const MuOptions& options = {});

/// Summary of probe ratios d(f(x),f(y))/d(x,y); event_b[k] is empty when
/// probe k is unclassified. Errors: kDegeneratePair if `ratios` is empty.
MuEstimate SummarizeRatios(const std::vector<double>& ratios,
                           const std::vector<std::optional<bool>>& event_b, int skipped);

/// LχCμᵗ + 2χLξ/((1−μ)n); t omitted gives the asymptotic term only.
/// Errors: kRateOutOfRange unless 0 < μ < 1.
double DiscreteStabilityBound(double chi, double mu, double lipschitz, double xi,
                              std::int64_t n, double c, std::optional<std::int64_t> t = {});

}  // namespace csl::sgdlab
