#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csl/dynsys/certify.h"
#include "csl/dynsys/trajectory.h"
#include "csl/learnlab/families.h"
#include "csl/learnlab/stability.h"

namespace csl::learnlab {

/// Least-squares fit of log y = intercept + slope·log x.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log residuals
  bool degenerate = false;  // some y ≤ 0, or fewer than two points
};
LogLogFit FitLogLog(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingOptions {
  std::vector<std::int64_t> n_list;
  int trials = 1;
  std::uint64_t seed = 0;
  double t_end = 40.0;
  double h = 0.02;
  int probe_size = 64;
  int lipschitz_samples = 128;
  /// Replace z_i by itself; every gap is then exactly zero.
  bool identical_replacement = false;
  /// Trial k shares its data across n: S_n is the first n draws of one pool,
  /// and z_i, z′ and the probe set are common. The replaced index is uniform
  /// on [0, n_min), which by exchangeability is uniform on S_n for every n.
  bool common_random_numbers = true;
  int threads = 1;
};

struct ScalingTrial {
  double sup_loss_gap = 0.0;
  double lipschitz = 0.0;
  double lambda = 0.0;
  double bound = 0.0;  // 2L̂²/(γn), γ = λ on the trial's training set
};

struct ScalingPoint {
  std::int64_t n = 0;
  double mean_gap = 0.0;
  double max_gap = 0.0;
  double max_bound_excess = 0.0;  // max over trials of gap − bound
  std::vector<ScalingTrial> trials;
};

struct ScalingReport {
  std::string family;
  std::vector<ScalingPoint> points;
  LogLogFit fit;
  std::int64_t bound_violations = 0;  // trials with gap > bound + 1e-9
};

/// For each n: `trials` fresh training sets, a random index replaced by a
/// fresh draw, paired gradient flows from the family's θ0, and the sup loss
/// gap at t_end. Trial k of size n uses the stream (seed, n, k), or the stream
/// (seed, k) for every n under common random numbers.
/// Errors: kInvalidArgument if n_list is not ascending with ≥ 3 entries.
ScalingReport ScalingExperiment(const ProblemFamily& family, const ScalingOptions& options);

struct ScheduleOptions {
  std::vector<std::int64_t> n_list = {64, 256};
  double alpha0 = 1.0;
  double decay = 0.5;
  double t_end = 10.0;
  double h = 0.01;
  int probe_size = 64;
  int lipschitz_samples = 128;
  int gap_stride = 50;
  std::uint64_t seed = 0;
};

struct ScheduleCase {
  std::int64_t n = 0;
  double lipschitz = 0.0;
  // Decaying schedule α₀e^{−kt}.
  double sup_loss_gap = 0.0;
  double bound = 0.0;             // (2L²/n)(α₀/k)(1 − e^{−kT})
  double quadrature_bound = 0.0;  // same with the trapezoid integral
  // Constant α₀ control against L(2χξT/n + R0) with ξ = α₀L.
  std::vector<double> control_times;
  std::vector<double> control_gap;
  std::vector<double> control_envelope;
  std::int64_t control_violations = 0;
};

struct ScheduleReport {
  std::string family;
  double alpha0 = 0.0, decay = 0.0, t_end = 0.0;
  std::vector<ScheduleCase> cases;
};

ScheduleReport ScheduleExperiment(const ProblemFamily& family, const ScheduleOptions& options);

struct RosenbrockOptions {
  double epsilon = 1e-3;
  double t_end = 30.0;
  double h = 1e-3;
  int n_starts = 2;
  double start_half_width = 1.5;  // starts uniform in [−w, w]²
  double cert_radius = 1e-3;
  int cert_samples = 4096;
  std::uint64_t seed = 0;
};

struct RosenbrockReport {
  std::vector<dynsys::Trajectory> trajectories;
  std::vector<double> final_errors;  // ‖θ(T) − (1,1)‖
  /// Damped-Newton flow in the metric ∇²f(1,1) + εI on a ball around (1,1).
  dynsys::ContractionCertificate local_certificate;
  /// Plain gradient flow, identity metric, ball of radius 2 at the origin.
  dynsys::ContractionCertificate global_gradient_certificate;
};

RosenbrockReport RosenbrockDemo(const RosenbrockOptions& options);

}  // namespace csl::learnlab
