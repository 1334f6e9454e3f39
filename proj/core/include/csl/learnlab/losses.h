#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "csl/common.h"
#include "csl/learnlab/dataset.h"

namespace csl::learnlab {

/// Per-example loss ℓ(θ, z) ≥ 0 with gradient and, when known, Hessian.
/// All callables must be reentrant.
struct LossModel {
  using Value = std::function<double(const Vector& theta, const Example& z)>;
  using Gradient = std::function<Vector(const Vector& theta, const Example& z)>;
  using Hessian = std::function<Matrix(const Vector& theta, const Example& z)>;

  std::string name;
  Value loss;
  Gradient grad;
  Hessian hessian;  // empty when unavailable
  /// For losses with ∇ℓ(θ, z) = A_z θ − b_z, returns (A_z, b_z). Lets sums
  /// over a training set be precomputed; empty otherwise.
  std::function<std::pair<Matrix, Vector>(const Example& z)> affine_gradient;
  /// Size of θ; 0 means "same as the feature dimension".
  Eigen::Index param_dim = 0;

  bool has_hessian() const { return static_cast<bool>(hessian); }
  Eigen::Index ParamDim(Eigen::Index feature_dim) const {
    return param_dim > 0 ? param_dim : feature_dim;
  }
};

/// Elementwise feature map φ applied to each coordinate of x.
struct FeatureMap {
  std::string name = "identity";
  std::function<double(double)> apply = [](double u) { return u; };

  Vector operator()(const Vector& x) const { return x.unaryExpr(apply); }
};

FeatureMap IdentityFeatures();
FeatureMap TanhFeatures();
/// Looks up "identity" or "tanh"; kInvalidArgument otherwise.
FeatureMap FeatureMapByName(const std::string& name);

/// ½(φ(x)ᵀθ − y)² + (α/2)‖θ‖². Summed over S this is kernel ridge regression.
LossModel RidgeLoss(double alpha, FeatureMap features = IdentityFeatures());

/// ½(θ − x)ᵀH(θ − x) with a fixed SPD H; the example's x is the well center.
LossModel QuadraticLoss(const Matrix& h);

/// ½γ‖θ − x‖².
LossModel IsotropicQuadraticLoss(double gamma, Eigen::Index dim);

/// Smoothed hinge h(y·xᵀθ): ½ − m for m ≤ 0, ½(1 − m)² on (0,1), 0 for m ≥ 1.
/// Convex with ‖∇ℓ‖ ≤ ‖x‖.
LossModel SmoothedHingeLoss();

/// softplus(r) + softplus(−r) − 2·log 2 with r = xᵀθ − y. Convex and
/// ‖x‖-Lipschitz.
LossModel SoftplusRegressionLoss();

/// log K − log Σ_k exp(−½γ‖θ − c_k − s·x‖²): K quadratic wells whose
/// centers are nudged by each example. Has isolated local minima.
LossModel QuadraticWellMixtureLoss(std::vector<Vector> centers, double gamma,
                                   double shift);

/// 100(θ₀² − θ₁)² + (θ₀ − 1)², independent of the example.
LossModel RosenbrockLoss();
double Rosenbrock(const Vector& theta);
Vector RosenbrockGradient(const Vector& theta);
Matrix RosenbrockHessian(const Vector& theta);

/// Relative error between loss.grad and central differences of loss.loss.
double GradientRelativeError(const LossModel& loss, const Vector& theta,
                             const Example& z);

/// (1/n) Σ ∇ℓ(θ, z_i).
Vector EmpiricalGradient(const LossModel& loss, const TrainingSet& s, const Vector& theta);
/// (1/n) Σ ℓ(θ, z_i).
double EmpiricalLoss(const LossModel& loss, const TrainingSet& s, const Vector& theta);

}  // namespace csl::learnlab
