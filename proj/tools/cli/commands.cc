#include "commands.h"

#include <cmath>

#include "csl/dynsys/certify.h"
#include "csl/dynsys/integrate.h"
#include "csl/error.h"
#include "csl/learnlab/experiments.h"
#include "csl/learnlab/families.h"
#include "csl/learnlab/gradient_flow.h"
#include "csl/learnlab/kernel_ridge.h"
#include "csl/learnlab/losses.h"
#include "csl/learnlab/stability.h"
#include "csl/matcalc/lyapunov.h"
#include "csl/random.h"
#include "csl/sgdlab/monte_carlo.h"

namespace csl::cli {

namespace {

Json Num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json Arr(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(Num(x));
  return out;
}

Json Arr(const Vector& v) { return Arr(std::vector<double>(v.data(), v.data() + v.size())); }

Json Mat(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(Arr(Vector(m.row(r).transpose())));
  return out;
}

struct Curves {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;

  Curves(std::initializer_list<std::string> names)
      : columns(names), values(columns.size()) {}
  void Row(std::initializer_list<double> row) {
    std::size_t k = 0;
    for (double v : row) values[k++].push_back(v);
  }
  Json ToJson() const {
    Json vals = Json::array();
    for (const auto& v : values) vals.push_back(Arr(v));
    return {{"columns", columns}, {"values", vals}};
  }
};

// Runs `body`, prefixing any csl::Error message with the operation name.
template <typename F>
auto Step(const char* operation, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    Throw(e.kind(), std::string(operation) + ": " + e.message());
  }
}

learnlab::ProblemFamily FamilyFrom(const Json& f) {
  learnlab::FamilyOptions o;
  o.dim = f["dim"];
  o.alpha = f["alpha"];
  o.noise = f["noise"];
  o.flip = f["flip"];
  o.features = f["features"];
  o.curvature_min = f["curvature_min"];
  o.curvature_max = f["curvature_max"];
  return Step("MakeFamily", [&] { return learnlab::MakeFamily(f["name"], o); });
}

std::vector<std::int64_t> IntList(const Json& j) { return j.get<std::vector<std::int64_t>>(); }

Json CertificateJson(const dynsys::ContractionCertificate& c) {
  return {{"verdict", dynsys::ToString(c.verdict)},
          {"lambda_min_observed", Num(c.lambda_min_observed)},
          {"n_samples", c.n_samples},
          {"region", c.region.Describe()},
          {"worst_point", Arr(c.worst_point)},
          {"worst_time", c.worst_time},
          {"rate_floor", c.rate_floor},
          {"metric", Mat(c.metric.M())},
          {"chi", Num(c.metric.chi())}};
}

Json Certify(const ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  const std::string system = p["system"];
  dynsys::VectorField field;
  Vector center;
  if (system == "quadratic") {
    const Eigen::Index d = p["dim"].get<Eigen::Index>();
    field = dynsys::LinearField(-p["gamma"].get<double>() * Matrix::Identity(d, d));
    center = Vector::Zero(d);
  } else if (system == "linear") {
    const Json& rows = p["matrix"];
    const auto d = static_cast<Eigen::Index>(rows.size());
    if (d == 0) Throw(ErrorKind::kConfigInvalid, "certify: 'matrix' is required for system linear");
    Matrix j(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != d) {
        Throw(ErrorKind::kConfigInvalid, "certify: 'matrix' must be square");
      }
      for (Eigen::Index c = 0; c < d; ++c) j(r, c) = rows[r][c];
    }
    field = dynsys::LinearField(j);
    center = Vector::Zero(d);
  } else {
    field = system == "rosenbrock_gradient"
                ? learnlab::RosenbrockGradientField()
                : learnlab::RosenbrockNewtonField(p["epsilon"].get<double>());
    center = Eigen::Vector2d(1.0, 1.0);
  }
  if (!p["center"].empty()) {
    const auto c = p["center"].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(c.size()) != field.dim) {
      Throw(ErrorKind::kConfigInvalid, "certify: 'center' has the wrong dimension");
    }
    center = Eigen::Map<const Vector>(c.data(), field.dim);
  }

  const std::string metric_name = p["metric"];
  const Eigen::Index d = field.dim;
  matcalc::Metric metric = matcalc::Metric::Identity(d);
  if (metric_name == "lyapunov") {
    metric = Step("SolveLyapunov", [&] {
      return matcalc::SolveLyapunov(field.jacobian(center, 0.0), Matrix::Identity(d, d));
    });
  } else if (metric_name == "hessian_at_minimum") {
    if (system.rfind("rosenbrock", 0) != 0) {
      Throw(ErrorKind::kConfigInvalid, "certify: metric hessian_at_minimum needs a Rosenbrock system");
    }
    metric = matcalc::MakeMetric(learnlab::RosenbrockHessian(Eigen::Vector2d(1.0, 1.0)) +
                                 p["epsilon"].get<double>() * Matrix::Identity(2, 2));
  }

  const double radius = p["radius"];
  dynsys::CertifyOptions co;
  co.n_samples = p["samples"];
  co.seed = cfg.seed;
  const auto cert = Step("CertifyContraction", [&] {
    return dynsys::CertifyContraction(field, metric, dynsys::Ball{center, radius}, co);
  });

  // Two trajectories from opposite points of the ball, in the metric norm.
  Vector offset = Vector::Zero(d);
  offset(0) = 0.5 * radius;
  const double t_end = p["t_end"], h = p["h"];
  const auto ta = Step("Integrate", [&] { return dynsys::Integrate(field, center + offset, t_end, h); });
  const auto tb = Step("Integrate", [&] { return dynsys::Integrate(field, center - offset, t_end, h); });
  const double lambda = cert.lambda_min_observed;
  const bool contracting = cert.verdict == dynsys::Verdict::kContracting;
  const double d0 = metric.Norm(ta.states()[0] - tb.states()[0]);
  Curves curves{"t", "distance", "envelope"};
  for (std::size_t k = 0; k < ta.size(); ++k) {
    const double t = ta.times()[k];
    curves.Row({t, metric.Norm(ta.states()[k] - tb.states()[k]),
                contracting ? d0 * std::exp(-lambda * t) : INFINITY});
  }
  return {{"certificate", CertificateJson(cert)},
          {"system", system},
          {"envelope", {{"formula", "d_M(0)*exp(-lambda*t)"}, {"lambda", Num(lambda)},
                        {"d0", d0}, {"applies", contracting}}},
          {"curves", curves.ToJson()}};
}

Json Stability(const ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  const auto family = FamilyFrom(p["family"]);
  const std::size_t n = p["n"];
  const std::size_t index = p["index"];
  if (index >= n) Throw(ErrorKind::kConfigInvalid, "stability: 'index' must be < n");
  Rng rng = MakeRng(cfg.seed, 0);
  const auto s = learnlab::SampleTrainingSet(family, n, rng);
  const auto z_new = family.sample(rng, static_cast<int>(n));
  learnlab::StabilityOptions o;
  o.t_end = p["t_end"];
  o.h = p["h"];
  o.flow.schedule = learnlab::ExponentialSchedule(p["alpha0"], p["decay"]);
  o.probe_set = learnlab::SampleExamples(family, p["probe_size"], rng, static_cast<int>(n) + 1);
  o.lipschitz_samples = p["lipschitz_samples"];
  o.gap_stride = p["gap_stride"];
  o.seed = cfg.seed;
  const auto r = Step("MeasureStability", [&] {
    return learnlab::MeasureStability(family.loss, s, index, z_new, family.theta0, o);
  });
  Curves curves{"t", "distance", "geodesic", "envelope", "bound"};
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    curves.Row({r.times[k], r.dist_curve[k], r.geo_curve[k], r.dist_envelope[k], r.bound_curve[k]});
  }
  return {{"family", family.name},
          {"n", r.n},
          {"index", index},
          {"sup_loss_gap_over_probe", Num(r.sup_loss_gap_over_probe)},
          {"bound",
           {{"name", r.regime},
            {"formula", r.formula},
            {"value", Num(r.bound_curve.back())},
            {"params",
             {{"chi", r.chi}, {"L", r.lipschitz}, {"xi", r.xi}, {"lambda", r.lambda},
              {"C", r.c}, {"n", r.n}, {"t", r.times.back()}, {"disturbance", r.disturbance}}}}},
          {"omega", r.omega},
          {"reference", Arr(r.reference)},
          {"gap_times", Arr(r.gap_times)},
          {"gap_curve", Arr(r.gap_curve)},
          {"curves", curves.ToJson()}};
}

Json FitJson(const learnlab::LogLogFit& f) {
  return {{"slope", Num(f.slope)}, {"intercept", Num(f.intercept)},
          {"residual", Num(f.residual)}, {"degenerate", f.degenerate}};
}

Json Scaling(const ExperimentConfig& cfg, int threads) {
  const Json& p = cfg.params;
  const auto family = FamilyFrom(p["family"]);
  learnlab::ScalingOptions o;
  o.n_list = IntList(p["n_list"]);
  o.trials = p["trials"];
  o.seed = cfg.seed;
  o.t_end = p["t_end"];
  o.h = p["h"];
  o.probe_size = p["probe_size"];
  o.lipschitz_samples = p["lipschitz_samples"];
  o.identical_replacement = p["identical_replacement"];
  o.common_random_numbers = p["common_random_numbers"];
  o.threads = threads;
  const auto r = Step("ScalingExperiment", [&] { return learnlab::ScalingExperiment(family, o); });
  Json points = Json::array();
  Curves curves{"n", "mean_gap", "max_gap", "mean_bound"};
  for (const auto& pt : r.points) {
    Json trials = Json::array();
    double mean_bound = 0.0;
    for (const auto& t : pt.trials) {
      trials.push_back({{"sup_loss_gap", Num(t.sup_loss_gap)}, {"L", Num(t.lipschitz)},
                        {"gamma", Num(t.lambda)}, {"bound", Num(t.bound)}});
      mean_bound += t.bound / static_cast<double>(pt.trials.size());
    }
    points.push_back({{"n", pt.n}, {"mean_gap", Num(pt.mean_gap)}, {"max_gap", Num(pt.max_gap)},
                      {"max_bound_excess", Num(pt.max_bound_excess)}, {"trials", trials}});
    curves.Row({static_cast<double>(pt.n), pt.mean_gap, pt.max_gap, mean_bound});
  }
  return {{"family", r.family},
          {"points", points},
          {"fit", FitJson(r.fit)},
          {"bound", {{"name", "strongly_convex"}, {"formula", "2*L^2/(gamma*n)"},
                     {"violations", r.bound_violations}, {"tolerance", 1e-9}}},
          {"curves", curves.ToJson()}};
}

Json SampleJson(const learnlab::MetricSample& s) {
  return {{"chi", Num(s.chi)}, {"lambda", Num(s.lambda)}, {"ratio", Num(s.ratio)}};
}

Json KernelMetric(const ExperimentConfig& cfg, int threads) {
  const Json& p = cfg.params;
  const Matrix g = learnlab::RandomGram(cfg.seed, p["d"], p["gram_samples"]);
  const auto r = Step("OptimalMetricExperiment", [&] {
    return learnlab::OptimalMetricExperiment(g, p["alpha"], p["n_random"], cfg.seed, threads,
                                             p["tolerance"]);
  });
  Curves curves{"chi", "lambda", "ratio"};
  for (const auto& s : r.samples) curves.Row({s.chi, s.lambda, s.ratio});
  return {{"g", Mat(r.g)},
          {"alpha", r.alpha},
          {"lambda_i", Num(r.lambda_i)},
          {"identity", SampleJson(r.identity)},
          {"q_identity", SampleJson(r.q_identity)},
          {"q_identity_rate_error", Num(r.q_identity_rate_error)},
          {"n_random", r.samples.size()},
          {"violations", r.violations},
          {"tolerance", r.tolerance},
          {"min_ratio_margin", Num(r.min_ratio_margin)},
          {"bound", {{"name", "metric_rate"}, {"formula", "lambda_M = 0.5*lambda_min(Q)/lambda_max(M)"}}},
          {"curves", curves.ToJson()}};
}

Json OptNum(const std::optional<double>& v) { return v ? Num(*v) : Json(nullptr); }

Json Sgd(const ExperimentConfig& cfg, int threads) {
  const Json& p = cfg.params;
  const auto family = FamilyFrom(p["family"]);
  sgdlab::MonteCarloOptions o;
  o.n_list = IntList(p["n_list"]);
  o.b = p["b"];
  o.steps = p["steps"];
  o.seeds = p["seeds"];
  o.eta = p["eta"];
  o.seed = cfg.seed;
  o.sampler = sgdlab::ParseSampler(p["sampler"].get<std::string>());
  o.n_probe = p["n_probe"];
  o.probe_size = p["probe_size"];
  o.lipschitz_samples = p["lipschitz_samples"];
  o.tail_fraction = p["tail_fraction"];
  o.threads = threads;
  const auto r = Step("MonteCarloStability", [&] { return sgdlab::MonteCarloStability(family, o); });
  Json points = Json::array();
  Curves curves{"n", "t", "mean_distance", "standard_error", "envelope"};
  for (const auto& pt : r.points) {
    const bool contracting = !pt.mu.not_contracting && pt.mu.mu > 0.0;
    const double bound = contracting
        ? sgdlab::DiscreteStabilityBound(pt.chi, pt.mu.mu, pt.lipschitz, pt.xi, pt.n, pt.c)
        : INFINITY;
    points.push_back(
        {{"n", pt.n},
         {"mu", {{"mu", Num(pt.mu.mu)}, {"standard_error", Num(pt.mu.standard_error)},
                 {"mu_given_a", OptNum(pt.mu.mu_given_a)}, {"mu_given_b", OptNum(pt.mu.mu_given_b)},
                 {"used", pt.mu.used}, {"skipped", pt.mu.skipped},
                 {"not_contracting", pt.mu.not_contracting}}},
         {"eps_hat", Num(pt.eps_hat)},
         {"envelope_violations", pt.envelope_violations},
         {"recursion_violations", pt.recursion_violations},
         {"event_b_rate", Num(pt.event_b_rate)},
         {"event_b_expected", Num(pt.event_b_expected)},
         {"max_disturbance_ratio", Num(pt.max_disturbance_ratio)},
         {"bound", {{"name", "discrete_contraction"},
                    {"formula", "2*chi*L*xi/((1-mu)*n)"},
                    {"value", Num(bound)},
                    {"params", {{"chi", pt.chi}, {"mu", Num(pt.mu.mu)}, {"L", pt.lipschitz},
                                {"xi", pt.xi}, {"C", pt.c}, {"n", pt.n}}}}},
         {"envelope_formula", "chi*C*mu^t + 2*chi*xi/((1-mu)*n)"}});
    for (std::size_t t = 0; t < pt.mean_dist.size(); ++t) {
      curves.Row({static_cast<double>(pt.n), static_cast<double>(t), pt.mean_dist[t],
                  pt.standard_error[t], pt.envelope[t]});
    }
  }
  return {{"family", r.family},
          {"b", o.b},
          {"eta", o.eta},
          {"sampler", p["sampler"]},
          {"points", points},
          {"fit", FitJson(r.fit)},
          {"curves", curves.ToJson()}};
}

Json Schedule(const ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  const auto family = FamilyFrom(p["family"]);
  learnlab::ScheduleOptions o;
  o.n_list = IntList(p["n_list"]);
  o.alpha0 = p["alpha0"];
  o.decay = p["decay"];
  o.t_end = p["t_end"];
  o.h = p["h"];
  o.probe_size = p["probe_size"];
  o.lipschitz_samples = p["lipschitz_samples"];
  o.gap_stride = p["gap_stride"];
  o.seed = cfg.seed;
  const auto r = Step("ScheduleExperiment", [&] { return learnlab::ScheduleExperiment(family, o); });
  Json cases = Json::array();
  Curves curves{"n", "t", "control_gap", "control_envelope"};
  for (const auto& c : r.cases) {
    cases.push_back(
        {{"n", c.n},
         {"sup_loss_gap", Num(c.sup_loss_gap)},
         {"holds", c.sup_loss_gap <= c.bound + 1e-9},
         {"bound", {{"name", "convex_schedule"},
                    {"formula", "(2*L^2/n)*(alpha0/k)*(1-exp(-k*T))"},
                    {"value", Num(c.bound)},
                    {"quadrature_value", Num(c.quadrature_bound)},
                    {"params", {{"L", c.lipschitz}, {"n", c.n}, {"alpha0", r.alpha0},
                                {"k", r.decay}, {"T", r.t_end}}}}},
         {"control", {{"formula", "L*(2*chi*xi*t/n), xi = alpha0*L, chi = 1"},
                      {"violations", c.control_violations}}}});
    for (std::size_t k = 0; k < c.control_times.size(); ++k) {
      curves.Row({static_cast<double>(c.n), c.control_times[k], c.control_gap[k],
                  c.control_envelope[k]});
    }
  }
  return {{"family", r.family}, {"cases", cases}, {"curves", curves.ToJson()}};
}

Json DemoRosenbrock(const ExperimentConfig& cfg) {
  const Json& p = cfg.params;
  learnlab::RosenbrockOptions o;
  o.epsilon = p["epsilon"];
  o.t_end = p["t_end"];
  o.h = p["h"];
  o.n_starts = p["n_starts"];
  o.start_half_width = p["start_half_width"];
  o.cert_radius = p["cert_radius"];
  o.cert_samples = p["cert_samples"];
  o.seed = cfg.seed;
  const auto r = Step("RosenbrockDemo", [&] { return learnlab::RosenbrockDemo(o); });
  const std::size_t stride = p["curve_stride"];
  Curves curves{"start", "t", "x", "y", "error"};
  Json starts = Json::array();
  bool all_within = true;
  for (std::size_t s = 0; s < r.trajectories.size(); ++s) {
    const auto& traj = r.trajectories[s];
    starts.push_back(Arr(traj.states().front()));
    all_within = all_within && r.final_errors[s] <= 1e-3;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      if (k % stride != 0 && k + 1 != traj.size()) continue;
      const Vector& x = traj.states()[k];
      curves.Row({static_cast<double>(s), traj.times()[k], x(0), x(1),
                  (x - Eigen::Vector2d(1.0, 1.0)).norm()});
    }
  }
  return {{"flow", "theta' = -(hess f + epsilon*I)^-1 grad f"},
          {"epsilon", o.epsilon},
          {"starts", starts},
          {"final_errors", Arr(r.final_errors)},
          {"all_within_1e-3", all_within},
          {"local_certificate", CertificateJson(r.local_certificate)},
          {"global_gradient_certificate", CertificateJson(r.global_gradient_certificate)},
          {"curves", curves.ToJson()}};
}

}  // namespace

Json RunCommand(const ExperimentConfig& config, int threads) {
  Json report;
  const std::string& c = config.command;
  if (c == "certify") report = Certify(config);
  else if (c == "stability") report = Stability(config);
  else if (c == "scaling") report = Scaling(config, threads);
  else if (c == "kernel-metric") report = KernelMetric(config, threads);
  else if (c == "sgd") report = Sgd(config, threads);
  else if (c == "schedule") report = Schedule(config);
  else if (c == "demo-rosenbrock") report = DemoRosenbrock(config);
  else Throw(ErrorKind::kConfigInvalid, "unknown command '" + c + "'");
  report["command"] = c;
  report["config"] = {{"command", c}, {"seed", config.seed}, {"params", config.params}};
  return report;
}

}  // namespace csl::cli
