#include "csl/learnlab/dataset.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "csl/dynsys/trajectory.h"
#include "csl/error.h"

namespace csl::learnlab {

TrainingSet::TrainingSet(std::vector<Example> examples) : examples_(std::move(examples)) {
  if (examples_.empty()) Throw(ErrorKind::kInvalidArgument, "training set needs n >= 1");
  std::set<int> ids;
  const Eigen::Index d = examples_.front().x.size();
  for (const Example& z : examples_) {
    if (z.x.size() != d) Throw(ErrorKind::kDimensionMismatch, "examples differ in feature dimension");
    if (!z.x.allFinite() || !std::isfinite(z.y)) {
      Throw(ErrorKind::kNonFinite, "example has non-finite entries");
    }
    if (!ids.insert(z.id).second) {
      Throw(ErrorKind::kInvalidArgument, "duplicate example id " + std::to_string(z.id));
    }
  }
}

TrainingSet ReplaceOne(const TrainingSet& s, std::size_t i, const Example& z_new) {
  if (i >= s.n()) Throw(ErrorKind::kIndexOutOfRange, "replace index " + std::to_string(i));
  std::vector<Example> out = s.examples();
  out[i] = z_new;
  return TrainingSet(std::move(out));
}

TrainingSet LeaveOneOut(const TrainingSet& s, std::size_t i) {
  if (i >= s.n()) Throw(ErrorKind::kIndexOutOfRange, "leave-out index " + std::to_string(i));
  if (s.n() == 1) Throw(ErrorKind::kInvalidArgument, "cannot leave out the only example");
  std::vector<Example> out = s.examples();
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return TrainingSet(std::move(out));
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double ParseDouble(const std::string& cell) {
  std::size_t begin = cell.find_first_not_of(" \t\r");
  std::size_t end = cell.find_last_not_of(" \t\r");
  if (begin == std::string::npos) Throw(ErrorKind::kInvalidArgument, "empty CSV cell");
  double value = 0.0;
  const char* first = cell.data() + begin;
  const char* last = cell.data() + end + 1;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    Throw(ErrorKind::kInvalidArgument, "bad number in CSV: '" + cell + "'");
  }
  return value;
}

}  // namespace

TrainingSet ReadTrainingSetCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) Throw(ErrorKind::kInvalidArgument, "missing CSV header");
  const auto header = SplitCsvLine(line);
  if (header.size() < 2) Throw(ErrorKind::kInvalidArgument, "CSV header needs x0 and y columns");
  for (std::size_t k = 0; k + 1 < header.size(); ++k) {
    if (header[k] != "x" + std::to_string(k)) {
      Throw(ErrorKind::kInvalidArgument, "unexpected CSV header column '" + header[k] + "'");
    }
  }
  const std::string& last = header.back();
  if (last != "y" && last != "y\r") {
    Throw(ErrorKind::kInvalidArgument, "last CSV header column must be y");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(header.size() - 1);
  std::vector<Example> examples;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      Throw(ErrorKind::kDimensionMismatch, "CSV row has wrong number of columns");
    }
    Example z;
    z.x.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) z.x[k] = ParseDouble(cells[static_cast<std::size_t>(k)]);
    z.y = ParseDouble(cells.back());
    z.id = static_cast<int>(examples.size());
    examples.push_back(std::move(z));
  }
  return TrainingSet(std::move(examples));
}

void WriteTrainingSetCsv(const TrainingSet& s, std::ostream& out) {
  const Eigen::Index d = s.feature_dim();
  for (Eigen::Index k = 0; k < d; ++k) out << 'x' << k << ',';
  out << "y\n";
  for (const Example& z : s.examples()) {
    for (Eigen::Index k = 0; k < d; ++k) out << dynsys::FormatDouble(z.x[k]) << ',';
    out << dynsys::FormatDouble(z.y) << '\n';
  }
}

Matrix DesignMatrix(const TrainingSet& s) {
  Matrix x(static_cast<Eigen::Index>(s.n()), s.feature_dim());
  for (std::size_t i = 0; i < s.n(); ++i) x.row(static_cast<Eigen::Index>(i)) = s[i].x.transpose();
  return x;
}

Vector Labels(const TrainingSet& s) {
  Vector y(static_cast<Eigen::Index>(s.n()));
  for (std::size_t i = 0; i < s.n(); ++i) y[static_cast<Eigen::Index>(i)] = s[i].y;
  return y;
}

}  // namespace csl::learnlab
