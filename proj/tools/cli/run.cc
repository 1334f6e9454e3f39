#include "run.h"

#include <chrono>

#include "commands.h"
#include "plots.h"

namespace csl::cli {

namespace fs = std::filesystem;

RunManifest RunExperiment(const ExperimentConfig& config, int threads) {
  const auto start = std::chrono::steady_clock::now();
  const Json report = RunCommand(config, threads);

  std::vector<NamedFile> files = {{"report.json", report.dump(2) + "\n"},
                                  {"curves.csv", CurvesCsv(report)}};
  for (auto& plot : RenderPlots(report)) files.push_back(std::move(plot));

  RunManifest manifest;
  manifest.tool_version = std::string(ToolVersion());
  manifest.command = config.command;
  manifest.config_hash = ConfigHash(config);
  manifest.seed = config.seed;
  manifest.threads = threads;
  const fs::path dir = config.output_dir;
  for (const auto& f : files) {
    WriteFileAtomic(dir / f.name, f.contents);
    manifest.outputs.push_back({f.name, Sha256Hex(f.contents), f.contents.size()});
  }
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  WriteFileAtomic(dir / "manifest.json", ToJson(manifest).dump(2) + "\n");
  return manifest;
}

std::vector<fs::path> RenderReport(const fs::path& report, fs::path out_dir) {
  if (!fs::is_regular_file(report)) {
    Throw(ErrorKind::kMissingReport, "report not found: " + report.string());
  }
  Json doc;
  try {
    doc = Json::parse(ReadFile(report));
  } catch (const std::exception& e) {
    Throw(ErrorKind::kMissingReport, "report does not parse: " + report.string() + ": " + e.what());
  }
  if (out_dir.empty()) out_dir = report.has_parent_path() ? report.parent_path() : fs::path(".");
  std::vector<fs::path> written;
  for (const auto& plot : RenderPlots(doc)) {
    WriteFileAtomic(out_dir / plot.name, plot.contents);
    written.push_back(out_dir / plot.name);
  }
  return written;
}

ExperimentConfig LoadConfig(const fs::path& path, const std::string& command) {
  Json doc;
  try {
    doc = Json::parse(ReadFile(path));
  } catch (const std::exception& e) {
    Throw(ErrorKind::kConfigInvalid, "cannot load config " + path.string() + ": " + e.what());
  }
  if (doc.is_object() && !doc.contains("command")) doc["command"] = command;
  if (doc.is_object() && doc["command"] != command) {
    Throw(ErrorKind::kConfigInvalid, "config is for command " + doc["command"].dump() +
                                         ", not '" + command + "'");
  }
  return ParseConfig(doc);
}

int ExitCodeFor(const Error& error) {
  switch (error.kind()) {
    case ErrorKind::kConfigInvalid:
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kIndexOutOfRange:
    case ErrorKind::kUnknownRegime:
    case ErrorKind::kMissingReport:
      return kExitConfigInvalid;
    default:
      return kExitNumericalFailure;
  }
}

}  // namespace csl::cli
