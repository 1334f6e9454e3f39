#include "csl/sgdlab/sgd.h"

#include <algorithm>
#include <cmath>

#include "csl/error.h"
#include "csl/matcalc/metric.h"

namespace csl::sgdlab {

using learnlab::Example;
using learnlab::TrainingSet;

UpdateMap GradientStepMap(const learnlab::LossModel& loss, double eta) {
  if (!(eta > 0.0)) Throw(ErrorKind::kNonPositiveParameter, "eta must be > 0");
  UpdateMap map;
  map.name = "gradient_step";
  map.xi_scale = eta;
  auto grad = loss.grad;
  map.g = [grad, eta](const Vector& theta, const Example& z) -> Vector {
    return theta - eta * grad(theta, z);
  };
  return map;
}

Vector SgdUpdate(const UpdateMap& map, const std::vector<const Example*>& batch,
                 const Vector& theta) {
  if (batch.empty()) Throw(ErrorKind::kInvalidArgument, "empty batch");
  Vector sum = Vector::Zero(theta.size());
  for (const Example* z : batch) sum += map.g(theta, *z);
  sum /= static_cast<double>(batch.size());
  if (!sum.allFinite()) Throw(ErrorKind::kNonFinite, "SGD update overflowed");
  return sum;
}

Vector SgdUpdate(const UpdateMap& map, const std::vector<Example>& batch, const Vector& theta) {
  std::vector<const Example*> ptrs;
  ptrs.reserve(batch.size());
  for (const Example& z : batch) ptrs.push_back(&z);
  return SgdUpdate(map, ptrs, theta);
}

namespace {

std::vector<const Example*> Gather(const TrainingSet& s, const std::vector<std::int64_t>& idx) {
  std::vector<const Example*> batch;
  batch.reserve(idx.size());
  for (std::int64_t k : idx) batch.push_back(&s[static_cast<std::size_t>(k)]);
  return batch;
}

BatchRealization CheckedRealization(const BatchRealization& r, const TrainingSet& s) {
  if (r.n != static_cast<std::int64_t>(s.n())) {
    Throw(ErrorKind::kDimensionMismatch, "realization n differs from the training set size");
  }
  return r;
}

}  // namespace

Vector SgdStep(const UpdateMap& map, const TrainingSet& s, const BatchRealization& realization,
               std::int64_t t, const Vector& theta) {
  CheckedRealization(realization, s);
  return SgdUpdate(map, Gather(s, realization.Indices(t)), theta);
}

dynsys::DiscreteMap SgdDiscreteMap(const UpdateMap& map, const TrainingSet& s, std::int64_t b,
                                   Sampler sampler) {
  dynsys::DiscreteMap f;
  f.dim = s.feature_dim();
  const auto n = static_cast<std::int64_t>(s.n());
  f.step = [map, s, b, n, sampler](const Vector& x, std::int64_t t, std::uint64_t r) {
    return SgdStep(map, s, BatchRealization{r, b, n, sampler}, t, x);
  };
  return f;
}

PairedRun RunPaired(const UpdateMap& map, const TrainingSet& s, std::size_t i,
                    const Example& z_new, const Vector& theta0, std::int64_t steps,
                    const BatchRealization& realization, const matcalc::Metric& metric,
                    const std::optional<Vector>& theta0_prime) {
  if (steps < 0) Throw(ErrorKind::kInvalidArgument, "steps must be >= 0");
  CheckedRealization(realization, s);
  const TrainingSet s_prime = learnlab::ReplaceOne(s, i, z_new);
  const auto replaced = static_cast<std::int64_t>(i);

  PairedRun run;
  Vector a = theta0;
  Vector b = theta0_prime.value_or(theta0);
  auto record = [&](std::int64_t t) {
    run.traj_s.Append(static_cast<double>(t), a);
    run.traj_sprime.Append(static_cast<double>(t), b);
    run.dist_curve.push_back((a - b).norm());
    run.geo_curve.push_back(metric.Norm(a - b));
  };
  record(0);
  for (std::int64_t t = 0; t < steps; ++t) {
    const std::vector<std::int64_t> idx = realization.Indices(t);
    const bool event_b = std::find(idx.begin(), idx.end(), replaced) != idx.end();
    const auto batch_s = Gather(s, idx);
    const auto batch_sp = Gather(s_prime, idx);
    run.events.push_back(event_b ? Event::kB : Event::kA);
    const Vector next_a = SgdUpdate(map, batch_s, a);
    run.disturbance.push_back(event_b ? (SgdUpdate(map, batch_sp, a) - next_a).norm() : 0.0);
    b = SgdUpdate(map, batch_sp, b);
    a = next_a;
    record(t + 1);
  }
  return run;
}

MuEstimate SummarizeRatios(const std::vector<double>& ratios,
                           const std::vector<std::optional<bool>>& event_b, int skipped) {
  if (ratios.empty()) Throw(ErrorKind::kDegeneratePair, "every probe pair had zero distance");
  MuEstimate est;
  est.used = static_cast<int>(ratios.size());
  est.skipped = skipped;
  double sum = 0.0, sum_a = 0.0, sum_b = 0.0;
  int count_a = 0, count_b = 0;
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    sum += ratios[k];
    if (k < event_b.size() && event_b[k]) {
      if (*event_b[k]) {
        sum_b += ratios[k];
        ++count_b;
      } else {
        sum_a += ratios[k];
        ++count_a;
      }
    }
  }
  const double m = static_cast<double>(ratios.size());
  est.mu = sum / m;
  if (ratios.size() > 1) {
    double ss = 0.0;
    for (double r : ratios) ss += (r - est.mu) * (r - est.mu);
    est.standard_error = std::sqrt(ss / (m - 1.0) / m);
  }
  if (count_a > 0) est.mu_given_a = sum_a / count_a;
  if (count_b > 0) est.mu_given_b = sum_b / count_b;
  est.not_contracting = est.mu >= 1.0;
  return est;
}

MuEstimate EstimateMu(const dynsys::DiscreteMap& f, const PairSampler& pairs,
                      const matcalc::Metric& metric, const MuOptions& options) {
  if (options.n_probe < 1) Throw(ErrorKind::kInvalidArgument, "n_probe must be >= 1");
  if (options.max_step < 1) Throw(ErrorKind::kInvalidArgument, "max_step must be >= 1");
  std::vector<double> ratios;
  std::vector<std::optional<bool>> events;
  int skipped = 0;
  for (int k = 0; k < options.n_probe; ++k) {
    Rng rng = MakeRng(options.seed, static_cast<std::uint64_t>(k));
    auto [x, y] = pairs(rng);
    std::uniform_int_distribution<std::int64_t> step(0, options.max_step - 1);
    const std::int64_t t = step(rng);
    const std::uint64_t r = rng();
    const double d0 = metric.Norm(x - y);
    if (!(d0 > 0.0)) {
      ++skipped;
      continue;
    }
    ratios.push_back(metric.Norm(f.step(x, t, r) - f.step(y, t, r)) / d0);
    events.push_back(options.event_b ? std::optional<bool>(options.event_b(t, r)) : std::nullopt);
  }
  return SummarizeRatios(ratios, events, skipped);
}

double DiscreteStabilityBound(double chi, double mu, double lipschitz, double xi,
                              std::int64_t n, double c, std::optional<std::int64_t> t) {
  if (!(mu > 0.0 && mu < 1.0)) Throw(ErrorKind::kRateOutOfRange, "mu must lie in (0, 1)");
  if (n < 1) Throw(ErrorKind::kInvalidArgument, "n must be >= 1");
  const double asymptotic =
      2.0 * chi * lipschitz * xi / ((1.0 - mu) * static_cast<double>(n));
  if (!t) return asymptotic;
  return lipschitz * chi * c * std::pow(mu, static_cast<double>(*t)) + asymptotic;
}

}  // namespace csl::sgdlab
