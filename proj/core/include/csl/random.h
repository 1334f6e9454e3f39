#pragma once

#include <cstdint>
#include <random>

#include "csl/common.h"

namespace csl {

using Rng = std::mt19937_64;

/// Mixes a base seed with a stream index (splitmix64 finalizer). Every trial,
/// seed, or step that needs randomness derives its own stream this way, so
/// results never depend on the order in which workers run.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream_a,
                         std::uint64_t stream_b);

Rng MakeRng(std::uint64_t seed, std::uint64_t stream);

Vector StandardNormalVector(Rng& rng, Eigen::Index dim);
Matrix StandardNormalMatrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Q = AᵀA + shift·I with A i.i.d. standard normal.
Matrix RandomSpd(Rng& rng, Eigen::Index dim, double shift = 0.1);

}  // namespace csl
