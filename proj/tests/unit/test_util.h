#pragma once

#include <string>

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "csl/common.h"
#include "csl/random.h"

namespace csl::test {

// Max-abs comparison in the style of CompareMatrices.
inline ::testing::AssertionResult MatricesNear(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return ::testing::AssertionFailure()
           << "size " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
  }
  const double err = (a - b).cwiseAbs().maxCoeff();
  if (err > tol) {
    return ::testing::AssertionFailure() << "max |a - b| = " << err << " > " << tol << "\na =\n"
                                         << a << "\nb =\n" << b;
  }
  return ::testing::AssertionSuccess();
}

// Hurwitz matrix with spectral abscissa −margin: A − (max Re λ(A) + margin)I.
inline Matrix RandomHurwitz(Rng& rng, Eigen::Index dim, double margin = 0.2) {
  const Matrix a = StandardNormalMatrix(rng, dim, dim);
  Eigen::EigenSolver<Matrix> eig(a, false);
  return a - (eig.eigenvalues().real().maxCoeff() + margin) * Matrix::Identity(dim, dim);
}

// Dense vectorized solve of MJ + JᵀM = −Q: (I⊗Jᵀ + Jᵀ⊗I) vec(M) = −vec(Q).
inline Matrix KroneckerLyapunov(const Matrix& j, const Matrix& q) {
  const Eigen::Index d = j.rows();
  Matrix big = Matrix::Zero(d * d, d * d);
  const Matrix eye = Matrix::Identity(d, d);
  const Matrix jt = j.transpose();
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      big.block(r * d, c * d, d, d) += eye(r, c) * jt;
      big.block(r * d, c * d, d, d) += jt(r, c) * eye;
    }
  }
  const Vector vq = Eigen::Map<const Vector>(q.data(), d * d);
  const Vector vm = big.fullPivLu().solve(-vq);
  return Eigen::Map<const Matrix>(vm.data(), d, d);
}

// Matrix exponential by scaling and squaring of a Taylor series.
inline Matrix Expm(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.5) ++squarings;
  const Matrix s = a / std::ldexp(1.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * s / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

}  // namespace csl::test
