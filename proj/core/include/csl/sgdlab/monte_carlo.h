#pragma once

#include <cstdint>
#include <vector>

#include "csl/learnlab/experiments.h"
#include "csl/learnlab/families.h"
#include "csl/sgdlab/realization.h"
#include "csl/sgdlab/sgd.h"

namespace csl::sgdlab {

struct MonteCarloOptions {
  std::vector<std::int64_t> n_list;
  std::int64_t b = 8;
  std::int64_t steps = 300;
  int seeds = 200;
  double eta = 0.1;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::kWithoutReplacement;
  int n_probe = 256;
  int probe_size = 64;
  int lipschitz_samples = 64;
  /// ε̂ averages the mean distance over this final fraction of the steps.
  double tail_fraction = 0.25;
  int threads = 1;
};

struct MonteCarloPoint {
  std::int64_t n = 0;
  std::vector<double> mean_dist;      // E[d_t] over seeds, t = 0..steps
  std::vector<double> standard_error;
  std::vector<double> envelope;       // χCμ̂ᵗ + 2χξ/((1−μ̂)n)
  MuEstimate mu;
  double chi = 1.0, c = 0.0, lipschitz = 0.0, xi = 0.0;
  std::int64_t envelope_violations = 0;   // mean > envelope + 2 SE
  std::int64_t recursion_violations = 0;  // E[d_{t+1}] > μ̂E[d_t] + √M_max·2ξ/n + 2 SE
  double eps_hat = 0.0;                   // L̂ · tail mean of E[d_t]
  double event_b_rate = 0.0;
  double event_b_expected = 0.0;
  /// max over B steps of the logged disturbance divided by 2ξ/b.
  double max_disturbance_ratio = 0.0;
};

struct MonteCarloReport {
  std::string family;
  std::vector<MonteCarloPoint> points;
  learnlab::LogLogFit fit;  // ε̂ against n
};

/// Paired mini-batch SGD over `seeds` independent draws per n (fresh data,
/// a uniformly chosen replaced index, a fresh replacement), with the step
/// rule θ − η∇ℓ. μ̂ is estimated on pairs (θ_S(t), θ_S′(t)) visited by the
/// runs, each pushed through its own seed's S-map with a fresh batch.
/// Errors: kInvalidArgument when seeds < 30 or n_list is empty.
MonteCarloReport MonteCarloStability(const learnlab::ProblemFamily& family,
                                     const MonteCarloOptions& options);

}  // namespace csl::sgdlab
