#pragma once

#include <cstdint>
#include <functional>

#include "csl/common.h"

namespace csl::dynsys {

/// Continuous-time dynamics ẋ = f(x, t) with Jacobian access. Both callables
/// must be reentrant: fields are shared across worker threads.
struct VectorField {
  using Eval = std::function<Vector(const Vector& x, double t)>;
  using Jacobian = std::function<Matrix(const Vector& x, double t)>;

  Eigen::Index dim = 0;
  Eval eval;
  Jacobian jacobian;

  Vector operator()(const Vector& x, double t) const { return eval(x, t); }
};

/// Discrete-time random dynamics x_{t+1} = f(x_t, t, Γ). `realization`
/// identifies Γ; the map must be deterministic in (x, t, realization).
struct DiscreteMap {
  using Step = std::function<Vector(const Vector& x, std::int64_t t,
                                    std::uint64_t realization)>;

  Eigen::Index dim = 0;
  Step step;
};

/// Central differences, step 1e-6·max(1, |x_j|).
Matrix FiniteDifferenceJacobian(const VectorField::Eval& f, const Vector& x,
                                double t);

/// Builds a field whose Jacobian is the finite-difference one.
VectorField WithFiniteDifferenceJacobian(Eigen::Index dim, VectorField::Eval f);

/// ẋ = Jx + b (b defaults to zero).
VectorField LinearField(const Matrix& j);
VectorField LinearField(const Matrix& j, const Vector& b);

/// Relative Frobenius error between field.jacobian and central differences.
double JacobianRelativeError(const VectorField& field, const Vector& x, double t);

}  // namespace csl::dynsys
