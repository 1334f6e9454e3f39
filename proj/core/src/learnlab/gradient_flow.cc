#include "csl/learnlab/gradient_flow.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <memory>

#include "csl/error.h"

namespace csl::learnlab {

Schedule ConstantSchedule(double alpha) {
  return [alpha](double) { return alpha; };
}

Schedule ExponentialSchedule(double alpha0, double decay) {
  return [alpha0, decay](double t) { return alpha0 * std::exp(-decay * t); };
}

namespace {

struct FlowParts {
  std::optional<Eigen::LLT<Matrix>> precond;
  Schedule schedule;

  double Rate(double t) const { return schedule ? schedule(t) : 1.0; }
  Vector Apply(const Vector& v) const { return precond ? Vector(precond->solve(v)) : v; }
  Matrix Apply(const Matrix& m) const { return precond ? Matrix(precond->solve(m)) : m; }
};

FlowParts MakeParts(const GradientFlowOptions& options) {
  FlowParts parts;
  if (options.preconditioner) parts.precond.emplace(options.preconditioner->M());
  parts.schedule = options.schedule;
  return parts;
}

}  // namespace

Vector PerExampleUpdate(const LossModel& loss, const GradientFlowOptions& options,
                        const Vector& theta, const Example& z, double t) {
  const FlowParts parts = MakeParts(options);
  return -parts.Rate(t) * parts.Apply(loss.grad(theta, z));
}

double UpdateScale(const GradientFlowOptions& options, double horizon) {
  double rate = 1.0;
  if (options.schedule) {
    rate = 0.0;
    const int grid = 1000;
    for (int k = 0; k <= grid; ++k) {
      rate = std::max(rate, std::abs(options.schedule(horizon * k / grid)));
    }
  }
  const double pinv = options.preconditioner ? 1.0 / options.preconditioner->eig_min() : 1.0;
  return rate * pinv;
}

dynsys::VectorField GradientFlowField(const LossModel& loss, const TrainingSet& s,
                                      const GradientFlowOptions& options) {
  if (!loss.grad) Throw(ErrorKind::kInvalidArgument, "loss has no gradient");
  if (options.require_exact_jacobian && !loss.has_hessian()) {
    Throw(ErrorKind::kMissingHessian, "loss '" + loss.name + "' provides no Hessian");
  }
  const Eigen::Index dim = loss.ParamDim(s.feature_dim());
  if (options.preconditioner && options.preconditioner->dim() != dim) {
    Throw(ErrorKind::kDimensionMismatch, "preconditioner size differs from parameter size");
  }
  const auto parts = std::make_shared<const FlowParts>(MakeParts(options));

  dynsys::VectorField field;
  field.dim = dim;
  if (loss.affine_gradient) {
    // Constant Hessian: (1/n)Σ∇ℓ = Āθ − b̄ with both sums precomputed.
    Matrix a_bar = Matrix::Zero(dim, dim);
    Vector b_bar = Vector::Zero(dim);
    for (const Example& z : s.examples()) {
      const auto [a, b] = loss.affine_gradient(z);
      a_bar += a;
      b_bar += b;
    }
    a_bar /= static_cast<double>(s.n());
    b_bar /= static_cast<double>(s.n());
    field.eval = [a_bar, b_bar, parts](const Vector& th, double t) -> Vector {
      return -parts->Rate(t) * parts->Apply(Vector(a_bar * th - b_bar));
    };
    field.jacobian = [a_bar, parts](const Vector&, double t) -> Matrix {
      return -parts->Rate(t) * parts->Apply(a_bar);
    };
    return field;
  }
  field.eval = [loss, s, parts](const Vector& th, double t) -> Vector {
    const double rate = parts->Rate(t);
    if (rate == 0.0) return Vector::Zero(th.size());
    return -rate * parts->Apply(EmpiricalGradient(loss, s, th));
  };
  if (loss.has_hessian()) {
    field.jacobian = [loss, s, parts](const Vector& th, double t) -> Matrix {
      Matrix h = Matrix::Zero(th.size(), th.size());
      for (const Example& z : s.examples()) h += loss.hessian(th, z);
      h /= static_cast<double>(s.n());
      return -parts->Rate(t) * parts->Apply(h);
    };
  } else {
    field.jacobian = [eval = field.eval](const Vector& th, double t) {
      return dynsys::FiniteDifferenceJacobian(eval, th, t);
    };
  }
  return field;
}

dynsys::VectorField RosenbrockNewtonField(double epsilon) {
  dynsys::VectorField field;
  field.dim = 2;
  field.eval = [epsilon](const Vector& th, double) -> Vector {
    const Matrix a = RosenbrockHessian(th) + epsilon * Matrix::Identity(2, 2);
    return -a.partialPivLu().solve(RosenbrockGradient(th));
  };
  field.jacobian = [epsilon](const Vector& th, double) -> Matrix {
    const Matrix h = RosenbrockHessian(th);
    const Eigen::PartialPivLU<Matrix> lu(h + epsilon * Matrix::Identity(2, 2));
    const Vector w = lu.solve(RosenbrockGradient(th));
    Matrix dh_dx(2, 2), dh_dy(2, 2);
    dh_dx << 2400.0 * th[0], -400.0, -400.0, 0.0;
    dh_dy << -400.0, 0.0, 0.0, 0.0;
    Matrix jac(2, 2);
    jac.col(0) = lu.solve(dh_dx * w) - lu.solve(h.col(0));
    jac.col(1) = lu.solve(dh_dy * w) - lu.solve(h.col(1));
    return jac;
  };
  return field;
}

dynsys::VectorField RosenbrockGradientField() {
  dynsys::VectorField field;
  field.dim = 2;
  field.eval = [](const Vector& th, double) -> Vector { return -RosenbrockGradient(th); };
  field.jacobian = [](const Vector& th, double) -> Matrix { return -RosenbrockHessian(th); };
  return field;
}

}  // namespace csl::learnlab
