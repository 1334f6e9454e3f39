#include "csl/sgdlab/realization.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "csl/error.h"
#include "csl/random.h"

namespace csl::sgdlab {

std::string_view ToString(Sampler sampler) {
  return sampler == Sampler::kWithReplacement ? "with_replacement" : "without_replacement";
}

Sampler ParseSampler(std::string_view text) {
  if (text == "with_replacement") return Sampler::kWithReplacement;
  if (text == "without_replacement") return Sampler::kWithoutReplacement;
  Throw(ErrorKind::kInvalidArgument, "unknown sampler: " + std::string(text));
}

std::vector<std::int64_t> BatchRealization::Indices(std::int64_t t) const {
  if (b < 1 || n < 1) Throw(ErrorKind::kInvalidArgument, "batch needs b >= 1 and n >= 1");
  Rng rng = MakeRng(seed, static_cast<std::uint64_t>(t));
  std::vector<std::int64_t> out(static_cast<std::size_t>(b));
  if (sampler == Sampler::kWithReplacement) {
    std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
    for (auto& idx : out) idx = pick(rng);
    return out;
  }
  if (b > n) Throw(ErrorKind::kInvalidArgument, "b > n is impossible without replacement");
  // Partial Fisher–Yates over 0..n−1.
  std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (std::int64_t k = 0; k < b; ++k) {
    std::uniform_int_distribution<std::int64_t> pick(k, n - 1);
    std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick(rng))]);
    out[static_cast<std::size_t>(k)] = pool[static_cast<std::size_t>(k)];
  }
  return out;
}

bool BatchRealization::Contains(std::int64_t t, std::int64_t index) const {
  const auto idx = Indices(t);
  return std::find(idx.begin(), idx.end(), index) != idx.end();
}

double EventBProbability(const BatchRealization& r) {
  const double n = static_cast<double>(r.n), b = static_cast<double>(r.b);
  if (r.sampler == Sampler::kWithoutReplacement) return std::min(1.0, b / n);
  return 1.0 - std::pow(1.0 - 1.0 / n, b);
}

}  // namespace csl::sgdlab
