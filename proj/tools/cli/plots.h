#pragma once

#include <string>
#include <vector>

#include "config.h"

namespace csl::cli {

struct NamedFile {
  std::string name;
  std::string contents;
};

// curves.csv from report["curves"]: a header row, then one row per sample
// with shortest round-trip doubles and empty cells for null values.
// A report without curves gives an empty file.
std::string CurvesCsv(const Json& report);

// The SVG plots declared for report["command"]. Unknown or missing data
// yields axes-only plots rather than an error.
std::vector<NamedFile> RenderPlots(const Json& report);

}  // namespace csl::cli
