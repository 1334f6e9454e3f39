#include "csl/error.h"

namespace csl {

std::string_view ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotSymmetric: return "NotSymmetric";
    case ErrorKind::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::kNotNegativeDefinite: return "NotNegativeDefinite";
    case ErrorKind::kNotHurwitz: return "NotHurwitz";
    case ErrorKind::kResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kNonPositiveRate: return "NonPositiveRate";
    case ErrorKind::kRateOutOfRange: return "RateOutOfRange";
    case ErrorKind::kVirtualMismatch: return "VirtualMismatch";
    case ErrorKind::kMissingHessian: return "MissingHessian";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kUnknownRegime: return "UnknownRegime";
    case ErrorKind::kNonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::kDegeneratePair: return "DegeneratePair";
    case ErrorKind::kDegenerateExperiment: return "DegenerateExperiment";
    case ErrorKind::kConfigInvalid: return "ConfigInvalid";
    case ErrorKind::kMissingReport: return "MissingReport";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(ToString(kind)) + ": " + what),
      kind_(kind),
      message_(what) {}

void Throw(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace csl
