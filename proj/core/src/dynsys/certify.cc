#include "csl/dynsys/certify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "csl/error.h"
#include "csl/matcalc/contraction.h"

namespace csl::dynsys {

std::string_view ToString(Verdict v) {
  switch (v) {
    case Verdict::kContracting: return "contracting";
    case Verdict::kSemiContracting: return "semi_contracting";
    case Verdict::kNotContracting: return "not_contracting";
  }
  return "unknown";
}

Verdict ClassifyRate(double lambda, double rate_floor) {
  if (std::abs(lambda) <= rate_floor) return Verdict::kSemiContracting;
  return lambda > rate_floor ? Verdict::kContracting : Verdict::kNotContracting;
}

namespace {

ContractionCertificate Certify(const VectorField& field, const matcalc::Metric& metric,
                               const Region& region, const CertifyOptions& options,
                               const std::vector<double>& times) {
  if (options.n_samples < 1) Throw(ErrorKind::kInvalidArgument, "n_samples must be >= 1");
  if (region.dim() != field.dim || metric.dim() != field.dim) {
    Throw(ErrorKind::kDimensionMismatch, "field, metric and region dimensions differ");
  }
  Rng rng(options.seed);
  double worst = std::numeric_limits<double>::infinity();
  Vector worst_point = region.center();
  double worst_time = times.front();
  for (int s = 0; s < options.n_samples; ++s) {
    const Vector x = region.Sample(rng);
    const double t = times[static_cast<std::size_t>(s) % times.size()];
    const double rate = matcalc::ContractionRate(field.jacobian(x, t), metric);
    if (rate < worst) {
      worst = rate;
      worst_point = x;
      worst_time = t;
    }
  }
  return ContractionCertificate{metric,     worst,        options.n_samples,
                                region,     worst_point,  worst_time,
                                options.rate_floor, ClassifyRate(worst, options.rate_floor)};
}

}  // namespace

ContractionCertificate CertifyContraction(const VectorField& field,
                                          const matcalc::Metric& metric,
                                          const Region& region,
                                          const CertifyOptions& options) {
  const std::vector<double> times =
      options.times.empty() ? std::vector<double>{0.0} : options.times;
  return Certify(field, metric, region, options, times);
}

ContractionCertificate PartialContractionCheck(const VectorField& field,
                                               const VirtualFieldBuilder& builder,
                                               const Trajectory& frozen,
                                               const matcalc::Metric& metric,
                                               const Region& region,
                                               const CertifyOptions& options) {
  if (frozen.empty()) Throw(ErrorKind::kInvalidArgument, "frozen trajectory is empty");
  const VectorField virtual_field = builder(frozen);
  if (virtual_field.dim != field.dim) {
    Throw(ErrorKind::kDimensionMismatch, "virtual system dimension differs from field");
  }

  // g(x, x, t) = f(x, t) at up to 200 evenly spaced recorded points.
  const std::size_t n = frozen.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 200);
  for (std::size_t k = 0; k < n; k += stride) {
    const double t = frozen.times()[k];
    const Vector& x = frozen.states()[k];
    const Vector f = field(x, t);
    const Vector g = virtual_field(x, t);
    const double err = (g - f).norm();
    if (!(err <= 1e-9 * std::max(1.0, f.norm()))) {
      std::ostringstream msg;
      msg << "g(x,x,t) differs from f(x,t) by " << err << " at t = " << t;
      Throw(ErrorKind::kVirtualMismatch, msg.str());
    }
  }

  std::vector<double> times = options.times;
  if (times.empty()) {
    const std::size_t tstride = std::max<std::size_t>(1, n / 64);
    for (std::size_t k = 0; k < n; k += tstride) times.push_back(frozen.times()[k]);
  }
  return Certify(virtual_field, metric, region, options, times);
}

}  // namespace csl::dynsys
