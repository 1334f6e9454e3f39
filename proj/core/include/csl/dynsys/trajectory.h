#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csl/common.h"

namespace csl::dynsys {

/// Sampled states of one run. Times are strictly increasing and the two
/// lists always have equal length.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<double> times, std::vector<Vector> states);

  void Append(double t, Vector x);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Vector>& states() const { return states_; }
  const Vector& back() const { return states_.back(); }

  /// Linear interpolation, clamped to the recorded time span.
  Vector At(double t) const;

  /// CSV with header `t,x0,x1,...`.
  void WriteCsv(std::ostream& out) const;
  std::string ToCsv() const;

 private:
  std::vector<double> times_;
  std::vector<Vector> states_;
};

/// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);

}  // namespace csl::dynsys
