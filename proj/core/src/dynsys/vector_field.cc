#include "csl/dynsys/vector_field.h"

#include <algorithm>
#include <cmath>

namespace csl::dynsys {

Matrix FiniteDifferenceJacobian(const VectorField::Eval& f, const Vector& x,
                                double t) {
  const Vector f0 = f(x, t);
  Matrix jac(f0.size(), x.size());
  Vector probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double step = 1e-6 * std::max(1.0, std::abs(x[k]));
    probe[k] = x[k] + step;
    const Vector plus = f(probe, t);
    probe[k] = x[k] - step;
    const Vector minus = f(probe, t);
    probe[k] = x[k];
    jac.col(k) = (plus - minus) / (2.0 * step);
  }
  return jac;
}

VectorField WithFiniteDifferenceJacobian(Eigen::Index dim, VectorField::Eval f) {
  VectorField field;
  field.dim = dim;
  field.eval = std::move(f);
  field.jacobian = [eval = field.eval](const Vector& x, double t) {
    return FiniteDifferenceJacobian(eval, x, t);
  };
  return field;
}

VectorField LinearField(const Matrix& j) {
  return LinearField(j, Vector::Zero(j.rows()));
}

VectorField LinearField(const Matrix& j, const Vector& b) {
  VectorField field;
  field.dim = j.rows();
  field.eval = [j, b](const Vector& x, double) -> Vector { return j * x + b; };
  field.jacobian = [j](const Vector&, double) -> Matrix { return j; };
  return field;
}

double JacobianRelativeError(const VectorField& field, const Vector& x, double t) {
  const Matrix exact = field.jacobian(x, t);
  const Matrix fd = FiniteDifferenceJacobian(field.eval, x, t);
  return (exact - fd).norm() / std::max(1.0, exact.norm());
}

}  // namespace csl::dynsys
