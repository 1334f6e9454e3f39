#include "csl/matcalc/lyapunov.h"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <sstream>
#include <vector>

#include "csl/error.h"

namespace csl::matcalc {

namespace {

constexpr double kResidualTolerance = 1e-10;

struct Block {
  Eigen::Index start;
  Eigen::Index size;
};

std::vector<Block> DiagonalBlocks(const Matrix& s) {
  std::vector<Block> blocks;
  const Eigen::Index n = s.rows();
  for (Eigen::Index k = 0; k < n;) {
    const bool pair = k + 1 < n && s(k + 1, k) != 0.0;
    blocks.push_back({k, pair ? 2 : 1});
    k += pair ? 2 : 1;
  }
  return blocks;
}

double MaxRealPart(const Matrix& s, const std::vector<Block>& blocks) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Block& b : blocks) {
    // A standardized 2x2 Schur block has equal diagonal entries; the trace is
    // twice the real part of its complex-conjugate pair either way.
    const double re = b.size == 1
                          ? s(b.start, b.start)
                          : 0.5 * (s(b.start, b.start) + s(b.start + 1, b.start + 1));
    worst = std::max(worst, re);
  }
  return worst;
}

// Solves X S + Sᵀ X = C for X, S upper quasi-triangular.
Matrix SolveQuasiTriangular(const Matrix& s, const std::vector<Block>& blocks,
                            const Matrix& c) {
  const Eigen::Index n = s.rows();
  Matrix x = Matrix::Zero(n, n);
  for (const Block& bi : blocks) {
    for (const Block& bj : blocks) {
      const Eigen::Index p = bi.size, q = bj.size;
      Matrix rhs = c.block(bi.start, bj.start, p, q);
      if (bi.start > 0) {
        rhs.noalias() -= s.block(0, bi.start, bi.start, p).transpose() *
                         x.block(0, bj.start, bi.start, q);
      }
      if (bj.start > 0) {
        rhs.noalias() -= x.block(bi.start, 0, p, bj.start) *
                         s.block(0, bj.start, bj.start, q);
      }
      const Matrix sii_t = s.block(bi.start, bi.start, p, p).transpose();
      const Matrix sjj = s.block(bj.start, bj.start, q, q);
      // Column-major vec: (I_q ⊗ Siiᵀ + Sjjᵀ ⊗ I_p) vec(X) = vec(rhs).
      Matrix kron = Matrix::Zero(p * q, p * q);
      for (Eigen::Index col = 0; col < q; ++col) {
        kron.block(col * p, col * p, p, p) += sii_t;
        for (Eigen::Index row = 0; row < q; ++row) {
          kron.block(row * p, col * p, p, p).diagonal().array() += sjj(col, row);
        }
      }
      Eigen::FullPivLU<Matrix> lu(kron);
      lu.setThreshold(1e-14);
      if (!lu.isInvertible()) {
        Throw(ErrorKind::kNotHurwitz, "singular Sylvester block in Lyapunov solve");
      }
      const Vector sol = lu.solve(Eigen::Map<const Vector>(rhs.data(), p * q));
      x.block(bi.start, bj.start, p, q) = Eigen::Map<const Matrix>(sol.data(), p, q);
    }
  }
  return x;
}

}  // namespace

double LyapunovResidual(const Eigen::Ref<const Matrix>& j,
                        const Eigen::Ref<const Matrix>& m,
                        const Eigen::Ref<const Matrix>& q) {
  const double qn = q.norm();
  const double rn = (m * j + j.transpose() * m + q).norm();
  return qn > 0.0 ? rn / qn : rn;
}

Matrix SolveLyapunovEquation(const Eigen::Ref<const Matrix>& j,
                             const Eigen::Ref<const Matrix>& q) {
  const Eigen::Index n = j.rows();
  if (j.cols() != n || q.rows() != n || q.cols() != n || n == 0) {
    Throw(ErrorKind::kDimensionMismatch, "J and Q must be square of equal size");
  }
  if (!j.allFinite() || !q.allFinite()) {
    Throw(ErrorKind::kNonFinite, "Lyapunov inputs contain non-finite entries");
  }

  Eigen::RealSchur<Matrix> schur(Matrix(j), /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    Throw(ErrorKind::kNotHurwitz, "real Schur decomposition did not converge");
  }
  const Matrix& s = schur.matrixT();
  const Matrix& u = schur.matrixU();
  const auto blocks = DiagonalBlocks(s);
  const double max_re = MaxRealPart(s, blocks);
  if (!(max_re < 0.0)) {
    std::ostringstream msg;
    msg << "J has an eigenvalue with real part " << max_re;
    Throw(ErrorKind::kNotHurwitz, msg.str());
  }

  // With J = U S Uᵀ and M = U X Uᵀ the equation becomes X S + Sᵀ X = −UᵀQU.
  auto solve = [&](const Matrix& rhs_sym) {
    const Matrix c = -(u.transpose() * rhs_sym * u);
    const Matrix x = SolveQuasiTriangular(s, blocks, c);
    Matrix m = u * x * u.transpose();
    return Matrix(0.5 * (m + m.transpose()));
  };

  const Matrix q_sym = 0.5 * (q + q.transpose());
  Matrix m = solve(q_sym);
  double residual = LyapunovResidual(j, m, q_sym);
  for (int round = 0; round < 3 && residual > 1e-15; ++round) {
    const Matrix r = m * j + j.transpose() * m + q_sym;
    const Matrix candidate = m + solve(r);
    const double next = LyapunovResidual(j, candidate, q_sym);
    if (!(next < residual)) break;
    m = candidate;
    residual = next;
  }
  if (!(residual <= kResidualTolerance)) {
    std::ostringstream msg;
    msg << "relative residual " << residual << " exceeds " << kResidualTolerance;
    Throw(ErrorKind::kResidualTooLarge, msg.str());
  }
  return m;
}

Metric SolveLyapunov(const Eigen::Ref<const Matrix>& j,
                     const Eigen::Ref<const Matrix>& q) {
  MakeMetric(q);  // validates that Q is SPD
  return MakeMetric(SolveLyapunovEquation(j, q));
}

}  // namespace csl::matcalc
