#include "csl/dynsys/trajectory.h"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include "csl/error.h"

namespace csl::dynsys {

std::string FormatDouble(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Trajectory::Trajectory(std::vector<double> times, std::vector<Vector> states)
    : times_(std::move(times)), states_(std::move(states)) {
  if (times_.size() != states_.size()) {
    Throw(ErrorKind::kDimensionMismatch, "trajectory times and states differ in length");
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) {
      Throw(ErrorKind::kInvalidArgument, "trajectory times must be strictly increasing");
    }
  }
}

void Trajectory::Append(double t, Vector x) {
  if (!times_.empty() && !(t > times_.back())) {
    Throw(ErrorKind::kInvalidArgument, "trajectory times must be strictly increasing");
  }
  times_.push_back(t);
  states_.push_back(std::move(x));
}

Vector Trajectory::At(double t) const {
  if (times_.empty()) Throw(ErrorKind::kInvalidArgument, "empty trajectory");
  if (t <= times_.front()) return states_.front();
  if (t >= times_.back()) return states_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
  return (1.0 - w) * states_[lo] + w * states_[hi];
}

void Trajectory::WriteCsv(std::ostream& out) const {
  const Eigen::Index dim = states_.empty() ? 0 : states_.front().size();
  out << "t";
  for (Eigen::Index i = 0; i < dim; ++i) out << ",x" << i;
  out << "\n";
  for (std::size_t k = 0; k < times_.size(); ++k) {
    out << FormatDouble(times_[k]);
    for (Eigen::Index i = 0; i < dim; ++i) out << ',' << FormatDouble(states_[k][i]);
    out << "\n";
  }
}

std::string Trajectory::ToCsv() const {
  std::ostringstream out;
  WriteCsv(out);
  return out.str();
}

}  // namespace csl::dynsys
