#pragma once

#include <functional>
#include <string>
#include <vector>

#include "csl/learnlab/dataset.h"
#include "csl/learnlab/losses.h"
#include "csl/random.h"

namespace csl::learnlab {

struct FamilyOptions {
  int dim = 5;
  double alpha = 0.5;          // ridge regularization
  double noise = 0.1;          // label noise
  double flip = 0.1;           // hinge label flip probability
  std::string features = "identity";
  double curvature_min = 0.5;  // quadratic: spectrum of H
  double curvature_max = 2.0;
};

/// A generative data family paired with the loss trained on it.
struct ProblemFamily {
  std::string name;
  Eigen::Index feature_dim = 0;
  LossModel loss;
  std::function<Example(Rng& rng, int id)> sample;
  Vector theta0;
  /// Known strong-convexity floor of every per-example loss (0 if none).
  double strong_convexity = 0.0;
};

/// "ridge", "quadratic", "hinge", "softplus" or "wells".
/// Errors: kInvalidArgument for unknown names or bad options.
ProblemFamily MakeFamily(const std::string& name, const FamilyOptions& options = {});

/// n fresh draws with ids 0..n−1.
TrainingSet SampleTrainingSet(const ProblemFamily& family, std::size_t n, Rng& rng);
std::vector<Example> SampleExamples(const ProblemFamily& family, std::size_t count, Rng& rng,
                                    int first_id);

}  // namespace csl::learnlab
