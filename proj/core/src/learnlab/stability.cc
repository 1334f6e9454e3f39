#include "csl/learnlab/stability.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csl/dynsys/certify.h"
#include "csl/dynsys/envelopes.h"
#include "csl/dynsys/integrate.h"
#include "csl/error.h"
#include "csl/learnlab/lipschitz.h"
#include "csl/matcalc/contraction.h"

namespace csl::learnlab {

double SupLossGap(const LossModel& loss, const std::vector<Example>& zs, const Vector& a,
                  const Vector& b) {
  double sup = 0.0;
  for (const Example& z : zs) sup = std::max(sup, std::abs(loss.loss(a, z) - loss.loss(b, z)));
  return sup;
}

namespace {

// λ along the visited states: the S-flow Jacobian at states of both runs.
double VisitedContractionRate(const dynsys::VectorField& field_s,
                              const matcalc::Metric& metric,
                              const dynsys::Trajectory& a, const dynsys::Trajectory& b) {
  double rate = std::numeric_limits<double>::infinity();
  const std::size_t stride = std::max<std::size_t>(1, a.size() / 100);
  for (std::size_t k = 0; k < a.size(); k += stride) {
    const double t = a.times()[k];
    rate = std::min(rate, matcalc::ContractionRate(field_s.jacobian(a.states()[k], t), metric));
    rate = std::min(rate, matcalc::ContractionRate(field_s.jacobian(b.states()[k], t), metric));
  }
  const double t_last = a.times().back();
  rate = std::min(rate, matcalc::ContractionRate(field_s.jacobian(a.back(), t_last), metric));
  rate = std::min(rate, matcalc::ContractionRate(field_s.jacobian(b.back(), t_last), metric));
  return rate;
}

}  // namespace

StabilityReport MeasureStability(const LossModel& loss, const TrainingSet& s, std::size_t i,
                                 const Example& z_new, const Vector& theta0,
                                 const StabilityOptions& options) {
  if (!theta0.allFinite()) Throw(ErrorKind::kNonFinite, "theta0 is not finite");
  if (!(options.t_end > 0.0)) Throw(ErrorKind::kInvalidArgument, "t_end must be > 0");
  const TrainingSet s_prime = ReplaceOne(s, i, z_new);
  const Vector theta0_prime = options.theta0_prime.value_or(theta0);

  const dynsys::VectorField field_s = GradientFlowField(loss, s, options.flow);
  const dynsys::VectorField field_sp = GradientFlowField(loss, s_prime, options.flow);
  const dynsys::Trajectory traj_s = dynsys::Integrate(field_s, theta0, options.t_end, options.h);
  const dynsys::Trajectory traj_sp =
      dynsys::Integrate(field_sp, theta0_prime, options.t_end, options.h);

  const matcalc::Metric metric =
      options.metric ? *options.metric
                     : (options.flow.preconditioner ? *options.flow.preconditioner
                                                    : matcalc::Metric::Identity(theta0.size()));

  StabilityReport report;
  report.n = static_cast<std::int64_t>(s.n());
  report.times = traj_s.times();
  report.dist_curve.reserve(report.times.size());
  report.geo_curve.reserve(report.times.size());
  for (std::size_t k = 0; k < traj_s.size(); ++k) {
    const Vector diff = traj_s.states()[k] - traj_sp.states()[k];
    report.dist_curve.push_back(diff.norm());
    report.geo_curve.push_back(metric.Norm(diff));
  }

  std::vector<Example> zs = s.examples();
  zs.push_back(z_new);
  zs.insert(zs.end(), options.probe_set.begin(), options.probe_set.end());

  if (options.gap_stride > 0) {
    for (std::size_t k = 0; k < traj_s.size(); k += static_cast<std::size_t>(options.gap_stride)) {
      report.gap_times.push_back(traj_s.times()[k]);
      report.gap_curve.push_back(SupLossGap(loss, zs, traj_s.states()[k], traj_sp.states()[k]));
    }
  }
  report.theta_s_final = traj_s.back();
  report.theta_sprime_final = traj_sp.back();
  report.sup_loss_gap_over_probe =
      SupLossGap(loss, zs, report.theta_s_final, report.theta_sprime_final);

  // Post-hoc constants on the visited region.
  const dynsys::Region omega = DefaultOmega({&traj_s, &traj_sp});
  report.omega = omega.Describe();
  report.reference = options.reference.value_or(Vector::Zero(theta0.size()));
  report.chi = options.chi.value_or(metric.chi());
  report.lambda = options.lambda.value_or(VisitedContractionRate(field_s, metric, traj_s, traj_sp));
  if (!options.lipschitz || !options.xi) {
    LipschitzOptions lip_opts;
    lip_opts.n_samples = options.lipschitz_samples;
    lip_opts.seed = options.seed;
    lip_opts.xi_scale = UpdateScale(options.flow, options.t_end);
    const std::size_t stride = std::max<std::size_t>(1, traj_s.size() / 50);
    for (std::size_t k = 0; k < traj_s.size(); k += stride) {
      lip_opts.extra_points.push_back(traj_s.states()[k]);
      lip_opts.extra_points.push_back(traj_sp.states()[k]);
    }
    const LipschitzEstimate lip = EstimateLipschitz(loss, zs, omega, lip_opts);
    report.lipschitz = options.lipschitz.value_or(lip.L);
    report.xi = options.xi.value_or(lip.xi);
  } else {
    report.lipschitz = *options.lipschitz;
    report.xi = *options.xi;
  }
  report.c = (theta0 - theta0_prime).norm();
  report.disturbance = DisturbanceBound(report.xi, report.n);

  report.dist_envelope.reserve(report.times.size());
  report.bound_curve.reserve(report.times.size());
  if (report.lambda > options.rate_floor) {
    report.regime = "contraction";
    for (double t : report.times) {
      const ContractionRegime regime{report.chi, report.lipschitz, report.xi, report.lambda,
                                     report.c, report.n, t};
      report.formula = std::string(RegimeFormula(regime));
      report.bound_curve.push_back(StabilityBound(regime));
      report.dist_envelope.push_back(dynsys::RobustnessEnvelopeContinuous(
          report.chi, report.lambda, report.c, report.disturbance, t));
    }
  } else {
    report.regime = "semi_contraction";
    report.formula = "L*(2*chi*xi*T/n + R0)";
    for (double t : report.times) {
      const double eps = dynsys::SemiContractionBound(report.chi, report.xi, report.n, t,
                                                      report.c, report.lipschitz);
      report.bound_curve.push_back(eps);
      report.dist_envelope.push_back(report.lipschitz > 0.0 ? eps / report.lipschitz
                                                            : report.c);
    }
  }
  return report;
}

}  // namespace csl::learnlab
