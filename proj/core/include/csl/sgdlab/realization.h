#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace csl::sgdlab {

enum class Sampler { kWithReplacement, kWithoutReplacement };

std::string_view ToString(Sampler sampler);
/// "with_replacement" or "without_replacement"; kInvalidArgument otherwise.
Sampler ParseSampler(std::string_view text);

/// The shared randomness Γ of a paired SGD run: the batch drawn at step t is a
/// pure function of (seed, t, b, n, sampler), so S and S′ see the same indices.
struct BatchRealization {
  std::uint64_t seed = 0;
  std::int64_t b = 1;
  std::int64_t n = 1;
  Sampler sampler = Sampler::kWithoutReplacement;

  /// Zero-based indices of the step-t batch. Errors: kInvalidArgument when
  /// b < 1, n < 1, or b > n without replacement.
  std::vector<std::int64_t> Indices(std::int64_t t) const;
  bool Contains(std::int64_t t, std::int64_t index) const;

  bool operator==(const BatchRealization&) const = default;
};

/// Probability that a given index is in a batch: b/n without replacement,
/// 1 − (1 − 1/n)^b with replacement.
double EventBProbability(const BatchRealization& realization);

}  // namespace csl::sgdlab
