#include "csl/learnlab/experiments.h"

#include <cmath>
#include <limits>

#include <Eigen/QR>

#include "csl/dynsys/envelopes.h"
#include "csl/dynsys/integrate.h"
#include "csl/error.h"
#include "csl/learnlab/bounds.h"
#include "csl/learnlab/gradient_flow.h"
#include "csl/parallel.h"

namespace csl::learnlab {

LogLogFit FitLogLog(const std::vector<double>& x, const std::vector<double>& y) {
  LogLogFit fit;
  if (x.size() != y.size()) Throw(ErrorKind::kDimensionMismatch, "fit: x and y differ in length");
  const std::size_t m = x.size();
  bool positive = m >= 2;
  for (std::size_t k = 0; k < m && positive; ++k) positive = x[k] > 0.0 && y[k] > 0.0;
  if (!positive) {
    fit.degenerate = true;
    fit.slope = fit.intercept = fit.residual = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  Matrix a(static_cast<Eigen::Index>(m), 2);
  Vector b(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    a(static_cast<Eigen::Index>(k), 0) = 1.0;
    a(static_cast<Eigen::Index>(k), 1) = std::log(x[k]);
    b(static_cast<Eigen::Index>(k)) = std::log(y[k]);
  }
  const Vector coef = a.colPivHouseholderQr().solve(b);
  fit.intercept = coef(0);
  fit.slope = coef(1);
  fit.residual = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(m));
  return fit;
}

namespace {

// One replace-one trial: S of size n, a uniformly chosen index, and z′ from
// the same family. Probe examples carry ids past S and z′.
struct TrialSetup {
  TrainingSet s;
  std::size_t index;
  Example z_new;
  std::vector<Example> probe;
};

TrialSetup MakeTrial(const ProblemFamily& family, std::int64_t n, int probe_size,
                     bool identical, Rng& rng) {
  TrainingSet s = SampleTrainingSet(family, static_cast<std::size_t>(n), rng);
  std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
  const auto index = static_cast<std::size_t>(pick(rng));
  Example z_new = family.sample(rng, static_cast<int>(n));
  if (identical) z_new = s[index];
  std::vector<Example> probe =
      SampleExamples(family, static_cast<std::size_t>(probe_size), rng, static_cast<int>(n) + 1);
  return {std::move(s), index, std::move(z_new), std::move(probe)};
}

// The first n draws of trial k's pool, with z_i, z′ and the probe shared
// across n.
TrialSetup NestedTrial(const ProblemFamily& family, std::int64_t n_min, std::int64_t n_max,
                       std::int64_t n, const ScalingOptions& options, std::size_t k) {
  Rng rng = MakeRng(DeriveSeed(options.seed, k), 0);
  const TrainingSet pool = SampleTrainingSet(family, static_cast<std::size_t>(n_max), rng);
  std::uniform_int_distribution<std::int64_t> pick(0, n_min - 1);
  const auto index = static_cast<std::size_t>(pick(rng));
  Example z_new = family.sample(rng, static_cast<int>(n_max));
  if (options.identical_replacement) z_new = pool[index];
  std::vector<Example> probe = SampleExamples(family, static_cast<std::size_t>(options.probe_size),
                                              rng, static_cast<int>(n_max) + 1);
  std::vector<Example> first(pool.examples().begin(), pool.examples().begin() + n);
  return {TrainingSet(std::move(first)), index, std::move(z_new), std::move(probe)};
}

}  // namespace

ScalingReport ScalingExperiment(const ProblemFamily& family, const ScalingOptions& options) {
  const auto& ns = options.n_list;
  if (ns.size() < 3) Throw(ErrorKind::kInvalidArgument, "n_list needs at least 3 values");
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (ns[k] < 1 || (k > 0 && ns[k] <= ns[k - 1])) {
      Throw(ErrorKind::kInvalidArgument, "n_list must be ascending and positive");
    }
  }
  if (options.trials < 1) Throw(ErrorKind::kInvalidArgument, "trials must be >= 1");

  ScalingReport report;
  report.family = family.name;
  report.points.resize(ns.size());
  const auto trials = static_cast<std::size_t>(options.trials);
  for (std::size_t p = 0; p < ns.size(); ++p) {
    report.points[p].n = ns[p];
    report.points[p].trials.resize(trials);
  }

  ParallelFor(ns.size() * trials, options.threads, [&](std::size_t job) {
    const std::size_t p = job / trials;
    const std::size_t k = job % trials;
    const std::int64_t n = ns[p];
    const TrialSetup trial =
        options.common_random_numbers
            ? NestedTrial(family, ns.front(), ns.back(), n, options, k)
            : [&] {
                Rng rng = MakeRng(DeriveSeed(options.seed, static_cast<std::uint64_t>(n), k), 0);
                return MakeTrial(family, n, options.probe_size, options.identical_replacement,
                                 rng);
              }();
    StabilityOptions so;
    so.t_end = options.t_end;
    so.h = options.h;
    so.probe_set = trial.probe;
    so.lipschitz_samples = options.lipschitz_samples;
    so.seed = DeriveSeed(options.seed, static_cast<std::uint64_t>(n), k + trials);
    const StabilityReport r =
        MeasureStability(family.loss, trial.s, trial.index, trial.z_new, family.theta0, so);
    ScalingTrial& out = report.points[p].trials[k];
    out.sup_loss_gap = r.sup_loss_gap_over_probe;
    out.lipschitz = r.lipschitz;
    out.lambda = r.lambda;
    out.bound = r.lambda > 0.0
                    ? StabilityBound(StronglyConvexRegime{r.lipschitz, r.lambda, n})
                    : std::numeric_limits<double>::infinity();
  });

  std::vector<double> xs, ys;
  for (ScalingPoint& point : report.points) {
    double sum = 0.0;
    point.max_bound_excess = -std::numeric_limits<double>::infinity();
    for (const ScalingTrial& t : point.trials) {
      sum += t.sup_loss_gap;
      point.max_gap = std::max(point.max_gap, t.sup_loss_gap);
      point.max_bound_excess = std::max(point.max_bound_excess, t.sup_loss_gap - t.bound);
      if (t.sup_loss_gap > t.bound + 1e-9) ++report.bound_violations;
    }
    point.mean_gap = sum / static_cast<double>(point.trials.size());
    xs.push_back(static_cast<double>(point.n));
    ys.push_back(point.mean_gap);
  }
  report.fit = FitLogLog(xs, ys);
  return report;
}

ScheduleReport ScheduleExperiment(const ProblemFamily& family, const ScheduleOptions& options) {
  if (!(options.alpha0 > 0.0) || !(options.decay > 0.0)) {
    Throw(ErrorKind::kNonPositiveParameter, "alpha0 and decay must be > 0");
  }
  ScheduleReport report;
  report.family = family.name;
  report.alpha0 = options.alpha0;
  report.decay = options.decay;
  report.t_end = options.t_end;

  for (std::int64_t n : options.n_list) {
    Rng rng = MakeRng(DeriveSeed(options.seed, static_cast<std::uint64_t>(n)), 0);
    const TrialSetup trial = MakeTrial(family, n, options.probe_size, false, rng);
    ScheduleCase sc;
    sc.n = n;

    StabilityOptions so;
    so.t_end = options.t_end;
    so.h = options.h;
    so.probe_set = trial.probe;
    so.lipschitz_samples = options.lipschitz_samples;
    so.seed = DeriveSeed(options.seed, static_cast<std::uint64_t>(n), 1);
    so.flow.schedule = ExponentialSchedule(options.alpha0, options.decay);
    const StabilityReport decaying =
        MeasureStability(family.loss, trial.s, trial.index, trial.z_new, family.theta0, so);
    sc.lipschitz = decaying.lipschitz;
    sc.sup_loss_gap = decaying.sup_loss_gap_over_probe;
    const double l = decaying.lipschitz;
    sc.bound = 2.0 * l * l / static_cast<double>(n) * (options.alpha0 / options.decay) *
               (1.0 - std::exp(-options.decay * options.t_end));
    sc.quadrature_bound = StabilityBound(
        ConvexScheduleRegime{l, n, so.flow.schedule, options.t_end, options.h});

    so.flow.schedule = ConstantSchedule(options.alpha0);
    so.gap_stride = options.gap_stride;
    const StabilityReport control =
        MeasureStability(family.loss, trial.s, trial.index, trial.z_new, family.theta0, so);
    sc.control_times = control.gap_times;
    sc.control_gap = control.gap_curve;
    for (std::size_t k = 0; k < control.gap_times.size(); ++k) {
      const double env = dynsys::SemiContractionBound(
          1.0, options.alpha0 * control.lipschitz, n, control.gap_times[k], 0.0,
          control.lipschitz);
      sc.control_envelope.push_back(env);
      if (control.gap_curve[k] > env + 1e-9) ++sc.control_violations;
    }
    report.cases.push_back(std::move(sc));
  }
  return report;
}

RosenbrockReport RosenbrockDemo(const RosenbrockOptions& options) {
  const Vector optimum = Vector::Ones(2);
  const dynsys::VectorField newton = RosenbrockNewtonField(options.epsilon);

  std::vector<dynsys::Trajectory> trajectories;
  std::vector<double> errors;
  for (int k = 0; k < options.n_starts; ++k) {
    Rng rng = MakeRng(options.seed, static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> u(-options.start_half_width, options.start_half_width);
    Vector x0(2);
    x0 << u(rng), u(rng);
    trajectories.push_back(dynsys::Integrate(newton, x0, options.t_end, options.h));
    errors.push_back((trajectories.back().back() - optimum).norm());
  }

  const matcalc::Metric local_metric = matcalc::MakeMetric(
      RosenbrockHessian(optimum) + options.epsilon * Matrix::Identity(2, 2));
  dynsys::CertifyOptions co;
  co.n_samples = options.cert_samples;
  co.seed = options.seed;
  dynsys::ContractionCertificate local = dynsys::CertifyContraction(
      newton, local_metric, dynsys::Ball{optimum, options.cert_radius}, co);
  dynsys::ContractionCertificate global = dynsys::CertifyContraction(
      RosenbrockGradientField(), matcalc::Metric::Identity(2),
      dynsys::Ball{Vector::Zero(2), 2.0}, co);
  return {std::move(trajectories), std::move(errors), std::move(local), std::move(global)};
}

}  // namespace csl::learnlab
