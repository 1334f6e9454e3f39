#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace csl::cli {

std::string Sha256Hex(std::string_view data);

// Writes `contents` to a temporary file next to `path`, then renames it over
// `path`. Creates parent directories. Errors: std::runtime_error on I/O failure.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

std::string ReadFile(const std::filesystem::path& path);

struct OutputRecord {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunManifest {
  std::string tool_version;
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  int threads = 1;
  double wall_clock_seconds = 0.0;
  std::vector<OutputRecord> outputs;
};

nlohmann::json ToJson(const RunManifest& manifest);

std::string_view ToolVersion();

}  // namespace csl::cli
