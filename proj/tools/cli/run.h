#pragma once

#include <filesystem>

#include "artifacts.h"
#include "config.h"
#include "csl/error.h"

namespace csl::cli {

enum ExitCode { kExitOk = 0, kExitConfigInvalid = 1, kExitNumericalFailure = 2 };

// Runs the experiment and writes report.json, curves.csv, the plots and
// manifest.json into config.output_dir, each atomically. Returns the manifest.
RunManifest RunExperiment(const ExperimentConfig& config, int threads);

// Rewrites the SVG plots of an existing report.json into `out_dir` (defaults
// to the report's directory). Errors: kMissingReport if the file is absent
// or does not parse.
std::vector<std::filesystem::path> RenderReport(const std::filesystem::path& report,
                                                std::filesystem::path out_dir = {});

// Reads a config file; a missing "command" is taken from `command`.
// Errors: kConfigInvalid on unreadable files, bad JSON, a command mismatch,
// or schema violations.
ExperimentConfig LoadConfig(const std::filesystem::path& path, const std::string& command);

// 1 for configuration problems (bad values, unknown keys, unknown regimes),
// 2 for numerical failures.
int ExitCodeFor(const Error& error);

}  // namespace csl::cli
