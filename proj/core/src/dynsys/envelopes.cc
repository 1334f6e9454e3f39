#include "csl/dynsys/envelopes.h"

#include <cmath>

#include "csl/error.h"

namespace csl::dynsys {

namespace {

void CheckCommon(double chi, double r0, double d) {
  if (!(chi >= 1.0)) Throw(ErrorKind::kInvalidArgument, "chi must be >= 1");
  if (!(r0 >= 0.0) || !(d >= 0.0)) {
    Throw(ErrorKind::kInvalidArgument, "R0 and D must be >= 0");
  }
}

}  // namespace

double RobustnessEnvelopeContinuous(double chi, double lambda, double r0, double d,
                                    double t) {
  if (!(lambda > 0.0)) Throw(ErrorKind::kNonPositiveRate, "lambda must be > 0");
  CheckCommon(chi, r0, d);
  if (!(t >= 0.0)) Throw(ErrorKind::kInvalidArgument, "t must be >= 0");
  return chi * r0 * std::exp(-lambda * t) + d * chi / lambda;
}

double RobustnessEnvelopeDiscrete(double chi, double mu, double r0, double d,
                                  std::int64_t t) {
  if (!(mu > 0.0 && mu < 1.0)) Throw(ErrorKind::kRateOutOfRange, "mu must lie in (0,1)");
  CheckCommon(chi, r0, d);
  if (t < 0) Throw(ErrorKind::kInvalidArgument, "t must be >= 0");
  return chi * r0 * std::pow(mu, static_cast<double>(t)) + d * chi / (1.0 - mu);
}

double ExpectedRobustnessEnvelope(double chi, double lambda, double c, double d,
                                  double t) {
  return RobustnessEnvelopeContinuous(chi, lambda, c, d, t);
}

double LocalRegionRequirement(double b, double chi, double lambda, double d,
                              RegionRequirement kind) {
  if (!(b > 0.0) || !(chi > 0.0) || !(lambda > 0.0) || !(d >= 0.0)) {
    Throw(ErrorKind::kNonPositiveParameter, "region requirement inputs must be positive");
  }
  const double transient = kind == RegionRequirement::kGeneral ? b * (chi + 1.0) : 2.0 * b * chi;
  return transient + chi * d / lambda;
}

double OptimizerRegionRequirement(double b, double chi, double lambda, double xi,
                                  std::int64_t n) {
  if (n < 1) Throw(ErrorKind::kNonPositiveParameter, "n must be >= 1");
  return LocalRegionRequirement(b, chi, lambda, 2.0 * xi / static_cast<double>(n),
                                RegionRequirement::kOptimizer);
}

double SemiContractionBound(double chi, double xi, std::int64_t n, double horizon,
                            double r0, double lipschitz) {
  if (n < 1) Throw(ErrorKind::kNonPositiveParameter, "n must be >= 1");
  if (!(horizon >= 0.0)) Throw(ErrorKind::kInvalidArgument, "T must be >= 0");
  return lipschitz * (2.0 * chi * xi / static_cast<double>(n) * horizon + r0);
}

}  // namespace csl::dynsys
