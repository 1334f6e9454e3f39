#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "artifacts.h"
#include "config.h"
#include "run.h"

namespace {

using csl::cli::ExperimentConfig;

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 1;
  std::optional<std::int64_t> n_random;
};

int Run(const std::string& command, const RunFlags& flags) {
  ExperimentConfig config = flags.config.empty()
                                ? csl::cli::DefaultConfig(command)
                                : csl::cli::LoadConfig(flags.config, command);
  if (flags.seed) config.seed = *flags.seed;
  if (!flags.out.empty()) config.output_dir = flags.out;
  if (flags.n_random) {
    csl::cli::Json doc = csl::cli::ToJson(config);
    doc["params"]["n_random"] = *flags.n_random;
    config = csl::cli::ParseConfig(doc);
  }
  const auto manifest = csl::cli::RunExperiment(config, flags.threads);
  std::cout << command << ": wrote " << manifest.outputs.size() + 1 << " files to "
            << config.output_dir << " (config " << manifest.config_hash.substr(0, 12) << ", "
            << manifest.wall_clock_seconds << " s)\n";
  return csl::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contraction-based stability experiments"};
  app.require_subcommand(0, 1);
  bool version = false;
  std::string schema;
  app.add_flag("--version", version, "Print the tool version");
  app.add_option("--schema", schema, "Print the JSON schema of a command's config");

  RunFlags flags;
  std::map<std::string, CLI::App*> commands;
  for (const auto& name : csl::cli::CommandNames()) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Seed (overrides the config)");
    sub->add_option("--out", flags.out, "Output directory (overrides the config)");
    sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    if (name == "kernel-metric") {
      sub->add_option("--n-random", flags.n_random, "Number of random Q matrices");
    }
    commands[name] = sub;
  }
  std::string report, render_out;
  auto* render = app.add_subcommand("render", "Re-render the plots of a report.json");
  render->add_option("--report", report, "Path to report.json")->required();
  render->add_option("--out", render_out, "Output directory (defaults to the report's)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : csl::cli::kExitConfigInvalid;
  }

  try {
    if (version) {
      std::cout << "csl " << csl::cli::ToolVersion() << "\n";
      return 0;
    }
    if (!schema.empty()) {
      std::cout << csl::cli::ConfigSchema(schema).dump(2) << "\n";
      return 0;
    }
    if (render->parsed()) {
      for (const auto& path : csl::cli::RenderReport(report, render_out)) {
        std::cout << "wrote " << path.string() << "\n";
      }
      return 0;
    }
    for (const auto& [name, sub] : commands) {
      if (sub->parsed()) return Run(name, flags);
    }
    std::cout << app.help();
    return csl::cli::kExitConfigInvalid;
  } catch (const csl::Error& e) {
    std::cerr << "csl: " << e.what() << "\n";
    return csl::cli::ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "csl: " << e.what() << "\n";
    return csl::cli::kExitNumericalFailure;
  }
}
