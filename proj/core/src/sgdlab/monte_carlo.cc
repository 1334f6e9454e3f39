#include "csl/sgdlab/monte_carlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "csl/error.h"
#include "csl/learnlab/lipschitz.h"
#include "csl/parallel.h"

namespace csl::sgdlab {

namespace {

struct SeedRun {
  learnlab::TrainingSet s;
  std::size_t index;
  BatchRealization realization;
  PairedRun run;
  double lipschitz = 0.0;
  double xi = 0.0;
};

SeedRun RunSeed(const learnlab::ProblemFamily& family, const UpdateMap& map,
                const MonteCarloOptions& o, std::int64_t n, std::size_t k) {
  Rng rng = MakeRng(DeriveSeed(o.seed, static_cast<std::uint64_t>(n), k), 0);
  learnlab::TrainingSet s = learnlab::SampleTrainingSet(family, static_cast<std::size_t>(n), rng);
  std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
  const auto index = static_cast<std::size_t>(pick(rng));
  const learnlab::Example z_new = family.sample(rng, static_cast<int>(n));
  std::vector<learnlab::Example> zs = s.examples();
  zs.push_back(z_new);
  const auto probe = learnlab::SampleExamples(family, static_cast<std::size_t>(o.probe_size), rng,
                                              static_cast<int>(n) + 1);
  zs.insert(zs.end(), probe.begin(), probe.end());

  const BatchRealization realization{DeriveSeed(o.seed, static_cast<std::uint64_t>(n), k + 1'000'000),
                                     o.b, n, o.sampler};
  const Eigen::Index dim = family.theta0.size();
  PairedRun run = RunPaired(map, s, index, z_new, family.theta0, o.steps, realization,
                            matcalc::Metric::Identity(dim));

  learnlab::LipschitzOptions lo;
  lo.n_samples = o.lipschitz_samples;
  lo.seed = DeriveSeed(o.seed, static_cast<std::uint64_t>(n), k + 2'000'000);
  lo.xi_scale = map.xi_scale;
  const std::size_t stride = std::max<std::size_t>(1, run.traj_s.size() / 20);
  for (std::size_t t = 0; t < run.traj_s.size(); t += stride) {
    lo.extra_points.push_back(run.traj_s.states()[t]);
    lo.extra_points.push_back(run.traj_sprime.states()[t]);
  }
  const auto lip = learnlab::EstimateLipschitz(
      family.loss, zs, learnlab::DefaultOmega({&run.traj_s, &run.traj_sprime}), lo);
  return {std::move(s), index, realization, std::move(run), lip.L, lip.xi};
}

}  // namespace

MonteCarloReport MonteCarloStability(const learnlab::ProblemFamily& family,
                                     const MonteCarloOptions& o) {
  if (o.seeds < 30) Throw(ErrorKind::kInvalidArgument, "seeds must be >= 30");
  if (o.n_list.empty()) Throw(ErrorKind::kInvalidArgument, "n_list is empty");
  if (o.steps < 1) Throw(ErrorKind::kInvalidArgument, "steps must be >= 1");
  const UpdateMap map = GradientStepMap(family.loss, o.eta);
  const auto seeds = static_cast<std::size_t>(o.seeds);
  const auto steps = static_cast<std::size_t>(o.steps);

  MonteCarloReport report;
  report.family = family.name;
  std::vector<double> xs, ys;
  for (std::int64_t n : o.n_list) {
    std::vector<std::optional<SeedRun>> slots(seeds);
    ParallelFor(seeds, o.threads, [&](std::size_t k) { slots[k] = RunSeed(family, map, o, n, k); });

    MonteCarloPoint point;
    point.n = n;
    point.mean_dist.assign(steps + 1, 0.0);
    point.standard_error.assign(steps + 1, 0.0);
    std::int64_t b_events = 0;
    for (const auto& slot : slots) {
      point.lipschitz = std::max(point.lipschitz, slot->lipschitz);
      point.xi = std::max(point.xi, slot->xi);
      for (std::size_t t = 0; t <= steps; ++t) point.mean_dist[t] += slot->run.dist_curve[t];
      for (Event e : slot->run.events) b_events += e == Event::kB ? 1 : 0;
      point.c = std::max(point.c, slot->run.dist_curve[0]);
    }
    const double m = static_cast<double>(seeds);
    for (double& v : point.mean_dist) v /= m;
    for (std::size_t t = 0; t <= steps; ++t) {
      double ss = 0.0;
      for (const auto& slot : slots) {
        const double dv = slot->run.dist_curve[t] - point.mean_dist[t];
        ss += dv * dv;
      }
      point.standard_error[t] = std::sqrt(ss / (m - 1.0) / m);
    }
    point.event_b_rate = static_cast<double>(b_events) / (m * static_cast<double>(steps));
    point.event_b_expected = EventBProbability(slots.front()->realization);

    const double per_b = 2.0 * point.xi / static_cast<double>(o.b);
    for (const auto& slot : slots) {
      for (std::size_t t = 0; t < steps; ++t) {
        if (slot->run.events[t] == Event::kB && per_b > 0.0) {
          point.max_disturbance_ratio =
              std::max(point.max_disturbance_ratio, slot->run.disturbance[t] / per_b);
        }
      }
    }

    // μ̂ on visited pairs: probe j picks a seed and a step with d > 0, then
    // applies that seed's S-map to both states under one fresh batch.
    std::vector<double> ratios;
    std::vector<std::optional<bool>> events;
    int skipped = 0;
    for (int j = 0; j < o.n_probe; ++j) {
      Rng rng = MakeRng(DeriveSeed(o.seed, static_cast<std::uint64_t>(n), 3'000'000), j);
      std::uniform_int_distribution<std::size_t> pick_seed(0, seeds - 1);
      std::uniform_int_distribution<std::size_t> pick_t(0, steps);
      const SeedRun& sr = *slots[pick_seed(rng)];
      const std::size_t t = pick_t(rng);
      const Vector& x = sr.run.traj_s.states()[t];
      const Vector& y = sr.run.traj_sprime.states()[t];
      const double d0 = (x - y).norm();
      if (!(d0 > 0.0)) {
        ++skipped;
        continue;
      }
      const BatchRealization fresh{rng(), o.b, n, o.sampler};
      const auto step = static_cast<std::int64_t>(t);
      const Vector fx = SgdStep(map, sr.s, fresh, step, x);
      const Vector fy = SgdStep(map, sr.s, fresh, step, y);
      ratios.push_back((fx - fy).norm() / d0);
      events.push_back(fresh.Contains(step, static_cast<std::int64_t>(sr.index)));
    }
    point.mu = SummarizeRatios(ratios, events, skipped);

    const double mu = point.mu.mu;
    // Identity metric, so √M_max = 1.
    const double disturbance = 2.0 * point.xi / static_cast<double>(n);
    point.envelope.resize(steps + 1);
    for (std::size_t t = 0; t <= steps; ++t) {
      point.envelope[t] = point.mu.not_contracting
                              ? std::numeric_limits<double>::infinity()
                              : DiscreteStabilityBound(point.chi, mu, 1.0, point.xi, n, point.c,
                                                       static_cast<std::int64_t>(t));
      if (point.mean_dist[t] > point.envelope[t] + 2.0 * point.standard_error[t]) {
        ++point.envelope_violations;
      }
      if (t > 0 && point.mean_dist[t] > mu * point.mean_dist[t - 1] + disturbance +
                                            2.0 * point.standard_error[t]) {
        ++point.recursion_violations;
      }
    }

    const auto tail = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(o.tail_fraction * static_cast<double>(steps))));
    double tail_sum = 0.0;
    for (std::size_t t = steps + 1 - tail; t <= steps; ++t) tail_sum += point.mean_dist[t];
    point.eps_hat = point.lipschitz * tail_sum / static_cast<double>(tail);
    xs.push_back(static_cast<double>(n));
    ys.push_back(point.eps_hat);
    report.points.push_back(std::move(point));
  }
  report.fit = learnlab::FitLogLog(xs, ys);
  return report;
}

}  // namespace csl::sgdlab
