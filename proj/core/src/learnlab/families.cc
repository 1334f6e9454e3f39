#include "csl/learnlab/families.h"

#include <cmath>

#include "csl/error.h"

namespace csl::learnlab {

namespace {

// Fixed teacher direction, independent of the run seed.
Vector Teacher(int dim) {
  Vector w(dim);
  for (int k = 0; k < dim; ++k) w[k] = 1.0 - 1.5 * k / std::max(1, dim - 1);
  return w / w.norm();
}

Vector UnitVector(Rng& rng, int dim) {
  Vector x = StandardNormalVector(rng, dim);
  const double nrm = x.norm();
  return nrm > 0.0 ? Vector(x / nrm) : Vector(Vector::Unit(dim, 0));
}

}  // namespace

ProblemFamily MakeFamily(const std::string& name, const FamilyOptions& options) {
  const int d = options.dim;
  if (d < 1) Throw(ErrorKind::kInvalidArgument, "family dimension must be >= 1");
  ProblemFamily fam;
  fam.name = name;
  fam.feature_dim = d;
  fam.theta0 = Vector::Zero(d);
  const Vector teacher = Teacher(d);
  const double noise = options.noise;

  if (name == "ridge") {
    if (!(options.alpha > 0.0)) Throw(ErrorKind::kNonPositiveParameter, "ridge alpha must be > 0");
    const FeatureMap phi = FeatureMapByName(options.features);
    fam.loss = RidgeLoss(options.alpha, phi);
    fam.strong_convexity = options.alpha;
    fam.sample = [teacher, noise, d, phi](Rng& rng, int id) {
      Example z;
      z.x = StandardNormalVector(rng, d);
      std::normal_distribution<double> eps(0.0, noise);
      z.y = phi(z.x).dot(teacher) + eps(rng);
      z.id = id;
      return z;
    };
  } else if (name == "quadratic") {
    if (!(options.curvature_min > 0.0) || options.curvature_max < options.curvature_min) {
      Throw(ErrorKind::kInvalidArgument, "quadratic curvature range is invalid");
    }
    Vector spectrum = Vector::LinSpaced(d, options.curvature_min, options.curvature_max);
    fam.loss = QuadraticLoss(spectrum.asDiagonal());
    fam.strong_convexity = options.curvature_min;
    fam.sample = [d](Rng& rng, int id) {
      Example z;
      z.x = StandardNormalVector(rng, d);
      z.y = 0.0;
      z.id = id;
      return z;
    };
  } else if (name == "hinge") {
    fam.loss = SmoothedHingeLoss();
    const double flip = options.flip;
    fam.sample = [teacher, flip, d](Rng& rng, int id) {
      Example z;
      z.x = UnitVector(rng, d);
      std::bernoulli_distribution flipped(flip);
      const double label = z.x.dot(teacher) >= 0.0 ? 1.0 : -1.0;
      z.y = flipped(rng) ? -label : label;
      z.id = id;
      return z;
    };
  } else if (name == "softplus") {
    fam.loss = SoftplusRegressionLoss();
    fam.sample = [teacher, noise, d](Rng& rng, int id) {
      Example z;
      z.x = UnitVector(rng, d);
      std::normal_distribution<double> eps(0.0, noise);
      z.y = z.x.dot(teacher) + eps(rng);
      z.id = id;
      return z;
    };
  } else if (name == "wells") {
    std::vector<Vector> centers = {Vector::Unit(d, 0) * 2.0, -Vector::Unit(d, 0) * 2.0};
    fam.loss = QuadraticWellMixtureLoss(std::move(centers), 1.0, 0.1);
    fam.theta0 = Vector::Unit(d, 0) * 1.5;
    fam.sample = [d](Rng& rng, int id) {
      Example z;
      z.x = StandardNormalVector(rng, d);
      z.y = 0.0;
      z.id = id;
      return z;
    };
  } else {
    Throw(ErrorKind::kInvalidArgument, "unknown problem family '" + name + "'");
  }
  return fam;
}

std::vector<Example> SampleExamples(const ProblemFamily& family, std::size_t count, Rng& rng,
                                    int first_id) {
  std::vector<Example> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(family.sample(rng, first_id + static_cast<int>(k)));
  return out;
}

TrainingSet SampleTrainingSet(const ProblemFamily& family, std::size_t n, Rng& rng) {
  return TrainingSet(SampleExamples(family, n, rng, 0));
}

}  // namespace csl::learnlab
