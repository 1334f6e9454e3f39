#include "csl/learnlab/losses.h"

#include <algorithm>
#include <cmath>

#include "csl/error.h"

namespace csl::learnlab {

FeatureMap IdentityFeatures() { return {}; }

FeatureMap TanhFeatures() {
  return {"tanh", [](double u) { return std::tanh(u); }};
}

FeatureMap FeatureMapByName(const std::string& name) {
  if (name == "identity") return IdentityFeatures();
  if (name == "tanh") return TanhFeatures();
  Throw(ErrorKind::kInvalidArgument, "unknown feature map '" + name + "'");
}

LossModel RidgeLoss(double alpha, FeatureMap features) {
  if (!(alpha >= 0.0)) Throw(ErrorKind::kNonPositiveParameter, "ridge alpha must be >= 0");
  LossModel m;
  m.name = "ridge";
  m.loss = [alpha, features](const Vector& th, const Example& z) {
    const double r = features(z.x).dot(th) - z.y;
    return 0.5 * r * r + 0.5 * alpha * th.squaredNorm();
  };
  m.grad = [alpha, features](const Vector& th, const Example& z) -> Vector {
    const Vector phi = features(z.x);
    return (phi.dot(th) - z.y) * phi + alpha * th;
  };
  m.hessian = [alpha, features](const Vector& th, const Example& z) -> Matrix {
    const Vector phi = features(z.x);
    return phi * phi.transpose() + alpha * Matrix::Identity(th.size(), th.size());
  };
  m.affine_gradient = [alpha, features](const Example& z) {
    const Vector phi = features(z.x);
    Matrix a = phi * phi.transpose();
    a.diagonal().array() += alpha;
    return std::make_pair(a, Vector(z.y * phi));
  };
  return m;
}

LossModel QuadraticLoss(const Matrix& h) {
  LossModel m;
  m.name = "quadratic";
  m.loss = [h](const Vector& th, const Example& z) {
    const Vector e = th - z.x;
    return 0.5 * e.dot(h * e);
  };
  m.grad = [h](const Vector& th, const Example& z) -> Vector { return h * (th - z.x); };
  m.hessian = [h](const Vector&, const Example&) -> Matrix { return h; };
  m.affine_gradient = [h](const Example& z) { return std::make_pair(h, Vector(h * z.x)); };
  return m;
}

LossModel IsotropicQuadraticLoss(double gamma, Eigen::Index dim) {
  LossModel m = QuadraticLoss(gamma * Matrix::Identity(dim, dim));
  m.name = "isotropic_quadratic";
  return m;
}

namespace {

double HingeValue(double margin) {
  if (margin <= 0.0) return 0.5 - margin;
  if (margin < 1.0) return 0.5 * (1.0 - margin) * (1.0 - margin);
  return 0.0;
}

double HingeSlope(double margin) {
  if (margin <= 0.0) return -1.0;
  if (margin < 1.0) return margin - 1.0;
  return 0.0;
}

double Softplus(double u) { return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

}  // namespace

LossModel SmoothedHingeLoss() {
  LossModel m;
  m.name = "smoothed_hinge";
  m.loss = [](const Vector& th, const Example& z) { return HingeValue(z.y * z.x.dot(th)); };
  m.grad = [](const Vector& th, const Example& z) -> Vector {
    return HingeSlope(z.y * z.x.dot(th)) * z.y * z.x;
  };
  m.hessian = [](const Vector& th, const Example& z) -> Matrix {
    const double margin = z.y * z.x.dot(th);
    const double curv = (margin > 0.0 && margin < 1.0) ? 1.0 : 0.0;
    return curv * z.x * z.x.transpose();
  };
  return m;
}

LossModel SoftplusRegressionLoss() {
  LossModel m;
  m.name = "softplus";
  m.loss = [](const Vector& th, const Example& z) {
    const double r = z.x.dot(th) - z.y;
    return std::max(0.0, Softplus(r) + Softplus(-r) - 2.0 * std::log(2.0));
  };
  m.grad = [](const Vector& th, const Example& z) -> Vector {
    const double r = z.x.dot(th) - z.y;
    return std::tanh(0.5 * r) * z.x;
  };
  m.hessian = [](const Vector& th, const Example& z) -> Matrix {
    const double r = z.x.dot(th) - z.y;
    const double c = std::cosh(0.5 * r);
    return (0.5 / (c * c)) * z.x * z.x.transpose();
  };
  return m;
}

namespace {

struct WellTerms {
  std::vector<Vector> offsets;  // θ − a_k
  Vector weights;               // softmin weights p_k
  double value = 0.0;
};

WellTerms EvaluateWells(const std::vector<Vector>& centers, double gamma, double shift,
                        const Vector& th, const Example& z) {
  const std::size_t k = centers.size();
  WellTerms w;
  w.offsets.reserve(k);
  Vector q(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    w.offsets.push_back(th - centers[i] - shift * z.x);
    q[static_cast<Eigen::Index>(i)] = 0.5 * gamma * w.offsets.back().squaredNorm();
  }
  const double qmin = q.minCoeff();
  const Vector e = (-(q.array() - qmin)).exp().matrix();
  const double sum = e.sum();
  w.weights = e / sum;
  // log K − log Σ exp(−q_k), computed stably.
  w.value = std::max(0.0, std::log(static_cast<double>(k)) + qmin - std::log(sum));
  return w;
}

}  // namespace

LossModel QuadraticWellMixtureLoss(std::vector<Vector> centers, double gamma, double shift) {
  if (centers.empty()) Throw(ErrorKind::kInvalidArgument, "need at least one well");
  if (!(gamma > 0.0)) Throw(ErrorKind::kNonPositiveParameter, "well curvature must be > 0");
  LossModel m;
  m.name = "quadratic_wells";
  m.loss = [centers, gamma, shift](const Vector& th, const Example& z) {
    return EvaluateWells(centers, gamma, shift, th, z).value;
  };
  m.grad = [centers, gamma, shift](const Vector& th, const Example& z) -> Vector {
    const WellTerms w = EvaluateWells(centers, gamma, shift, th, z);
    Vector g = Vector::Zero(th.size());
    for (std::size_t i = 0; i < w.offsets.size(); ++i) {
      g += w.weights[static_cast<Eigen::Index>(i)] * gamma * w.offsets[i];
    }
    return g;
  };
  m.hessian = [centers, gamma, shift](const Vector& th, const Example& z) -> Matrix {
    const WellTerms w = EvaluateWells(centers, gamma, shift, th, z);
    const Eigen::Index d = th.size();
    Vector mean = Vector::Zero(d);
    Matrix second = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < w.offsets.size(); ++i) {
      const double p = w.weights[static_cast<Eigen::Index>(i)];
      const Vector g = gamma * w.offsets[i];
      mean += p * g;
      second += p * g * g.transpose();
    }
    return gamma * Matrix::Identity(d, d) - second + mean * mean.transpose();
  };
  return m;
}

double Rosenbrock(const Vector& th) {
  const double a = th[0] * th[0] - th[1];
  const double b = th[0] - 1.0;
  return 100.0 * a * a + b * b;
}

Vector RosenbrockGradient(const Vector& th) {
  const double a = th[0] * th[0] - th[1];
  Vector g(2);
  g << 400.0 * th[0] * a + 2.0 * (th[0] - 1.0), -200.0 * a;
  return g;
}

Matrix RosenbrockHessian(const Vector& th) {
  Matrix h(2, 2);
  h << 1200.0 * th[0] * th[0] - 400.0 * th[1] + 2.0, -400.0 * th[0],
      -400.0 * th[0], 200.0;
  return h;
}

LossModel RosenbrockLoss() {
  LossModel m;
  m.name = "rosenbrock";
  m.param_dim = 2;
  m.loss = [](const Vector& th, const Example&) { return Rosenbrock(th); };
  m.grad = [](const Vector& th, const Example&) -> Vector { return RosenbrockGradient(th); };
  m.hessian = [](const Vector& th, const Example&) -> Matrix { return RosenbrockHessian(th); };
  return m;
}

double GradientRelativeError(const LossModel& loss, const Vector& theta, const Example& z) {
  const Vector exact = loss.grad(theta, z);
  Vector fd(theta.size());
  Vector probe = theta;
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    const double step = 1e-6 * std::max(1.0, std::abs(theta[k]));
    probe[k] = theta[k] + step;
    const double plus = loss.loss(probe, z);
    probe[k] = theta[k] - step;
    const double minus = loss.loss(probe, z);
    probe[k] = theta[k];
    fd[k] = (plus - minus) / (2.0 * step);
  }
  return (exact - fd).norm() / std::max(1.0, exact.norm());
}

Vector EmpiricalGradient(const LossModel& loss, const TrainingSet& s, const Vector& theta) {
  Vector g = Vector::Zero(theta.size());
  for (const Example& z : s.examples()) g += loss.grad(theta, z);
  return g / static_cast<double>(s.n());
}

double EmpiricalLoss(const LossModel& loss, const TrainingSet& s, const Vector& theta) {
  double sum = 0.0;
  for (const Example& z : s.examples()) sum += loss.loss(theta, z);
  return sum / static_cast<double>(s.n());
}

}  // namespace csl::learnlab
