#include "csl/dynsys/region.h"

#include <cmath>
#include <sstream>

#include "csl/dynsys/trajectory.h"
#include "csl/error.h"

namespace csl::dynsys {

Region::Region(Ball ball) : shape_(std::move(ball)) {
  const auto& b = std::get<Ball>(shape_);
  if (b.center.size() == 0) Throw(ErrorKind::kInvalidArgument, "ball needs a center");
  if (!(b.radius >= 0.0)) Throw(ErrorKind::kInvalidArgument, "ball radius must be >= 0");
}

Region::Region(Box box) : shape_(std::move(box)) {
  const auto& b = std::get<Box>(shape_);
  if (b.lower.size() == 0 || b.lower.size() != b.upper.size()) {
    Throw(ErrorKind::kDimensionMismatch, "box bounds must be nonempty and equal length");
  }
  if ((b.upper.array() < b.lower.array()).any()) {
    Throw(ErrorKind::kInvalidArgument, "box upper bound below lower bound");
  }
}

Eigen::Index Region::dim() const {
  return is_ball() ? std::get<Ball>(shape_).center.size()
                   : std::get<Box>(shape_).lower.size();
}

Vector Region::center() const {
  if (is_ball()) return std::get<Ball>(shape_).center;
  const auto& b = std::get<Box>(shape_);
  return 0.5 * (b.lower + b.upper);
}

Vector Region::FromReference(const Vector& u) const {
  if (is_ball()) {
    const auto& b = std::get<Ball>(shape_);
    return b.center + b.radius * u;
  }
  const auto& b = std::get<Box>(shape_);
  return 0.5 * (b.lower + b.upper) + 0.5 * (b.upper - b.lower).cwiseProduct(u);
}

Vector Region::SampleReference(Rng& rng) const {
  const Eigen::Index d = dim();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (is_ball()) {
    Vector dir = StandardNormalVector(rng, d);
    const double nrm = dir.norm();
    if (nrm == 0.0) return Vector::Zero(d);
    const double r = std::pow(unif(rng), 1.0 / static_cast<double>(d));
    return (r / nrm) * dir;
  }
  Vector u(d);
  for (Eigen::Index i = 0; i < d; ++i) u[i] = 2.0 * unif(rng) - 1.0;
  return u;
}

Vector Region::SampleReferenceBoundary(Rng& rng) const {
  const Eigen::Index d = dim();
  if (is_ball()) {
    Vector dir = StandardNormalVector(rng, d);
    const double nrm = dir.norm();
    if (nrm == 0.0) {
      dir.setZero();
      dir[0] = 1.0;
      return dir;
    }
    return dir / nrm;
  }
  Vector u = SampleReference(rng);
  std::uniform_int_distribution<Eigen::Index> face(0, d - 1);
  const Eigen::Index k = face(rng);
  u[k] = u[k] >= 0.0 ? 1.0 : -1.0;
  return u;
}

Vector Region::Sample(Rng& rng) const { return FromReference(SampleReference(rng)); }

std::string Region::Describe() const {
  std::ostringstream out;
  auto vec = [&](const Vector& v) {
    out << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << FormatDouble(v[i]);
    out << ']';
  };
  if (is_ball()) {
    const auto& b = std::get<Ball>(shape_);
    out << "ball(center=";
    vec(b.center);
    out << ",radius=" << FormatDouble(b.radius) << ')';
  } else {
    const auto& b = std::get<Box>(shape_);
    out << "box(lower=";
    vec(b.lower);
    out << ",upper=";
    vec(b.upper);
    out << ')';
  }
  return out.str();
}

Ball BoundingBall(const std::vector<Vector>& points, double inflate) {
  if (points.empty()) Throw(ErrorKind::kInvalidArgument, "no points for bounding ball");
  Vector lo = points.front(), hi = points.front();
  for (const Vector& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Ball ball{0.5 * (lo + hi), 0.0};
  for (const Vector& p : points) ball.radius = std::max(ball.radius, (p - ball.center).norm());
  ball.radius *= 1.0 + inflate;
  return ball;
}

}  // namespace csl::dynsys
