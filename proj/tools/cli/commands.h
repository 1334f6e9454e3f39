#pragma once

#include "config.h"

namespace csl::cli {

// Runs the experiment named by config.command and returns its report. The
// report is a pure function of (command, params, seed): it embeds that part
// of the config, every bound formula and parameter value used, and the curve
// data ("curves": {"columns": [...], "values": [[...], ...]}, column-major,
// null for non-finite values) from which curves.csv and the plots are made.
//
// Errors from the numerical modules are rethrown as csl::Error with the same
// kind and the failing operation named in the message.
Json RunCommand(const ExperimentConfig& config, int threads);

}  // namespace csl::cli
