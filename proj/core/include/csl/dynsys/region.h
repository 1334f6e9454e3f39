#pragma once

#include <string>
#include <variant>
#include <vector>

#include "csl/common.h"
#include "csl/random.h"

namespace csl::dynsys {

struct Ball {
  Vector center;
  double radius = 1.0;
};

struct Box {
  Vector lower;
  Vector upper;
};

/// A user-declared sampling region: a Euclidean ball or an axis-aligned box.
class Region {
 public:
  Region(Ball ball);  // NOLINT(runtime/explicit)
  Region(Box box);    // NOLINT(runtime/explicit)

  Eigen::Index dim() const;
  const std::variant<Ball, Box>& shape() const { return shape_; }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }

  /// Uniform draw.
  Vector Sample(Rng& rng) const;

  /// Maps a point u of the reference set (unit ball, or the cube [-1,1]^d)
  /// into the region.
  Vector FromReference(const Vector& u) const;
  Vector center() const;

  /// Uniform reference-set draw, see FromReference().
  Vector SampleReference(Rng& rng) const;
  /// Uniform draw on the boundary of the reference set.
  Vector SampleReferenceBoundary(Rng& rng) const;

  std::string Describe() const;

 private:
  std::variant<Ball, Box> shape_;
};

/// Smallest ball centred at the mean of the points' bounding box that
/// contains all points, with the radius inflated by `inflate` (relative).
Ball BoundingBall(const std::vector<Vector>& points, double inflate = 0.1);

}  // namespace csl::dynsys
