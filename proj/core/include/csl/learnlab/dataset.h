#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csl/common.h"

namespace csl::learnlab {

/// One labelled example z = (x, y).
struct Example {
  Vector x;
  double y = 0.0;
  int id = 0;

  bool operator==(const Example& other) const {
    return id == other.id && y == other.y && x.size() == other.x.size() &&
           x == other.x;
  }
};

/// Ordered, nonempty list of examples with unique ids.
class TrainingSet {
 public:
  explicit TrainingSet(std::vector<Example> examples);

  std::size_t n() const { return examples_.size(); }
  const std::vector<Example>& examples() const { return examples_; }
  const Example& operator[](std::size_t i) const { return examples_[i]; }
  Eigen::Index feature_dim() const { return examples_.front().x.size(); }

  bool operator==(const TrainingSet& other) const { return examples_ == other.examples_; }

 private:
  std::vector<Example> examples_;
};

/// S′ with example i replaced by z_new; S itself is untouched.
/// Errors: kIndexOutOfRange.
TrainingSet ReplaceOne(const TrainingSet& s, std::size_t i, const Example& z_new);

/// S with example i removed (n − 1 examples, remaining ids kept).
/// Errors: kIndexOutOfRange, kInvalidArgument when n = 1.
TrainingSet LeaveOneOut(const TrainingSet& s, std::size_t i);

/// CSV import with header `x0,...,xd,y`; ids are the zero-based row index.
TrainingSet ReadTrainingSetCsv(std::istream& in);
void WriteTrainingSetCsv(const TrainingSet& s, std::ostream& out);

/// Row i of the returned matrix is x_i.
Matrix DesignMatrix(const TrainingSet& s);
Vector Labels(const TrainingSet& s);

}  // namespace csl::learnlab
