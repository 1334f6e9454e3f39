#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace csl::cli {

using Json = nlohmann::json;

// The experiment commands. "render" is a utility command and has no config.
const std::vector<std::string>& CommandNames();
bool IsCommand(const std::string& name);

struct ExperimentConfig {
  std::string command;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::string output_dir = "csl-out";

  bool operator==(const ExperimentConfig&) const = default;
};

// Full JSON schema of a config file for `command`.
// Errors: kConfigInvalid for an unknown command.
Json ConfigSchema(const std::string& command);

// Checks `value` against the subset of JSON schema used by ConfigSchema:
// type, enum, minimum, exclusiveMinimum, maximum, minItems, items,
// properties, required and additionalProperties = false. Returns one message
// per problem, each prefixed with the JSON pointer of the offending value.
std::vector<std::string> Validate(const Json& value, const Json& schema);

// Validates, fills schema defaults, and converts. Errors: kConfigInvalid with
// every validation message joined.
ExperimentConfig ParseConfig(const Json& doc);
Json ToJson(const ExperimentConfig& config);

// Default config for `command` (all params at their schema defaults).
ExperimentConfig DefaultConfig(const std::string& command);

// Hex SHA-256 of the canonical dump of {command, params, seed}; output_dir is
// excluded so relocating the outputs does not change the hash.
std::string ConfigHash(const ExperimentConfig& config);

}  // namespace csl::cli
