#include "csl/random.h"

namespace csl {

namespace {

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(SplitMix64(seed) ^ (stream * 0xd6e8feb86659fd93ULL + 1));
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream_a,
                         std::uint64_t stream_b) {
  return DeriveSeed(DeriveSeed(seed, stream_a), stream_b);
}

Rng MakeRng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(DeriveSeed(seed, stream));
}

Vector StandardNormalVector(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal(rng);
  return v;
}

Matrix StandardNormalMatrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  // Row-major fill so the draw order matches how matrices are written out.
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = normal(rng);
  return m;
}

Matrix RandomSpd(Rng& rng, Eigen::Index dim, double shift) {
  const Matrix a = StandardNormalMatrix(rng, dim, dim);
  return a.transpose() * a + shift * Matrix::Identity(dim, dim);
}

}  // namespace csl
