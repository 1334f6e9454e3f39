#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csl {

enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kNotSymmetric,
  kNotPositiveDefinite,
  kNotNegativeDefinite,
  kNotHurwitz,
  kResidualTooLarge,
  kNonFinite,
  kNonPositiveRate,
  kRateOutOfRange,
  kVirtualMismatch,
  kMissingHessian,
  kIndexOutOfRange,
  kUnknownRegime,
  kNonPositiveParameter,
  kDegeneratePair,
  kDegenerateExperiment,
  kConfigInvalid,
  kMissingReport,
};

std::string_view ToString(ErrorKind kind);

// All library failures are reported through this exception. `kind()` lets
// callers branch on the failure without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] void Throw(ErrorKind kind, const std::string& what);

}  // namespace csl
