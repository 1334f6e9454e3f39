#include "config.h"

#include <algorithm>
#include <cmath>

#include "artifacts.h"
#include "csl/error.h"

namespace csl::cli {

namespace {

Json Num(double def, std::optional<double> min = {}, bool exclusive = false,
         std::optional<double> max = {}) {
  Json s = {{"type", "number"}, {"default", def}};
  if (min) s[exclusive ? "exclusiveMinimum" : "minimum"] = *min;
  if (max) s["maximum"] = *max;
  return s;
}

Json Int(std::int64_t def, std::int64_t min) {
  return {{"type", "integer"}, {"default", def}, {"minimum", min}};
}

Json Bool(bool def) { return {{"type", "boolean"}, {"default", def}}; }

Json Enum(std::vector<std::string> values, const std::string& def) {
  return {{"type", "string"}, {"enum", values}, {"default", def}};
}

Json IntList(std::vector<std::int64_t> def, std::size_t min_items) {
  return {{"type", "array"},
          {"items", {{"type", "integer"}, {"minimum", 1}}},
          {"minItems", min_items},
          {"default", def}};
}

Json NumList() {
  return {{"type", "array"}, {"items", {{"type", "number"}}}, {"default", Json::array()}};
}

Json Matrix() {
  return {{"type", "array"},
          {"items", {{"type", "array"}, {"items", {{"type", "number"}}}, {"minItems", 1}}},
          {"default", Json::array()}};
}

Json Object(Json properties) {
  Json s = {{"type", "object"}, {"additionalProperties", false}, {"properties", properties}};
  Json defaults = Json::object();
  for (auto& [key, sub] : properties.items()) {
    if (sub.contains("default")) defaults[key] = sub["default"];
  }
  s["default"] = defaults;
  return s;
}

Json Family(const std::string& name) {
  return Object({{"name", Enum({"ridge", "quadratic", "hinge", "softplus", "wells"}, name)},
                 {"dim", Int(5, 1)},
                 {"alpha", Num(0.5, 0.0, true)},
                 {"noise", Num(0.1, 0.0)},
                 {"flip", Num(0.1, 0.0, false, 1.0)},
                 {"features", Enum({"identity", "tanh"}, "identity")},
                 {"curvature_min", Num(0.5, 0.0, true)},
                 {"curvature_max", Num(2.0, 0.0, true)}});
}

Json ParamsSchema(const std::string& command) {
  if (command == "certify") {
    return Object({{"system", Enum({"quadratic", "linear", "rosenbrock_gradient",
                                    "rosenbrock_newton"},
                                   "quadratic")},
                   {"gamma", Num(1.0, 0.0, true)},
                   {"dim", Int(2, 1)},
                   {"matrix", Matrix()},
                   {"epsilon", Num(1e-3, 0.0, true)},
                   {"metric", Enum({"identity", "lyapunov", "hessian_at_minimum"}, "identity")},
                   {"center", NumList()},
                   {"radius", Num(1.0, 0.0, true)},
                   {"samples", Int(4096, 1)},
                   {"t_end", Num(5.0, 0.0, true)},
                   {"h", Num(0.01, 0.0, true)}});
  }
  if (command == "stability") {
    return Object({{"family", Family("ridge")},
                   {"n", Int(100, 1)},
                   {"index", Int(0, 0)},
                   {"t_end", Num(10.0, 0.0, true)},
                   {"h", Num(0.01, 0.0, true)},
                   {"alpha0", Num(1.0, 0.0, true)},
                   {"decay", Num(0.0, 0.0)},
                   {"probe_size", Int(64, 0)},
                   {"lipschitz_samples", Int(256, 1)},
                   {"gap_stride", Int(0, 0)}});
  }
  if (command == "scaling") {
    return Object({{"family", Family("ridge")},
                   {"n_list", IntList({32, 64, 128, 256, 512}, 3)},
                   {"trials", Int(20, 1)},
                   {"t_end", Num(40.0, 0.0, true)},
                   {"h", Num(0.02, 0.0, true)},
                   {"probe_size", Int(64, 0)},
                   {"lipschitz_samples", Int(128, 1)},
                   {"identical_replacement", Bool(false)},
                   {"common_random_numbers", Bool(true)}});
  }
  if (command == "kernel-metric") {
    return Object({{"d", Int(3, 1)},
                   {"gram_samples", Int(3, 1)},
                   {"alpha", Num(0.1, 0.0, true)},
                   {"n_random", Int(4000, 1)},
                   {"tolerance", Num(1e-9, 0.0)}});
  }
  if (command == "sgd") {
    return Object({{"family", Family("quadratic")},
                   {"n_list", IntList({50, 100, 200}, 1)},
                   {"b", Int(8, 1)},
                   {"steps", Int(300, 1)},
                   {"seeds", Int(200, 30)},
                   {"eta", Num(0.1, 0.0, true)},
                   {"sampler", Enum({"with_replacement", "without_replacement"},
                                    "without_replacement")},
                   {"n_probe", Int(256, 1)},
                   {"probe_size", Int(64, 0)},
                   {"lipschitz_samples", Int(64, 1)},
                   {"tail_fraction", Num(0.25, 0.0, true, 1.0)}});
  }
  if (command == "schedule") {
    return Object({{"family", Family("hinge")},
                   {"n_list", IntList({64, 256}, 1)},
                   {"alpha0", Num(1.0, 0.0, true)},
                   {"decay", Num(0.5, 0.0, true)},
                   {"t_end", Num(10.0, 0.0, true)},
                   {"h", Num(0.01, 0.0, true)},
                   {"probe_size", Int(64, 0)},
                   {"lipschitz_samples", Int(128, 1)},
                   {"gap_stride", Int(50, 1)}});
  }
  if (command == "demo-rosenbrock") {
    return Object({{"epsilon", Num(1e-3, 0.0, true)},
                   {"t_end", Num(30.0, 0.0, true)},
                   {"h", Num(1e-3, 0.0, true)},
                   {"n_starts", Int(2, 1)},
                   {"start_half_width", Num(1.5, 0.0, true)},
                   {"cert_radius", Num(1e-3, 0.0, true)},
                   {"cert_samples", Int(4096, 1)},
                   {"curve_stride", Int(20, 1)}});
  }
  Throw(ErrorKind::kConfigInvalid, "unknown command '" + command + "'");
}

bool HasType(const Json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    // 4000.0 is accepted as an integer, 4000.5 is not.
    return v.is_number_float() && std::isfinite(v.get<double>()) &&
           v.get<double>() == std::floor(v.get<double>());
  }
  if (type == "number") return v.is_number();
  return false;
}

void ValidateAt(const Json& v, const Json& s, const std::string& path,
                std::vector<std::string>& errors) {
  const std::string where = path.empty() ? "/" : path;
  if (s.contains("type")) {
    const std::string type = s["type"];
    if (!HasType(v, type)) {
      errors.push_back(where + ": expected " + type + ", got " + v.type_name());
      return;
    }
  }
  if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end()) {
    errors.push_back(where + ": " + v.dump() + " is not one of " + s["enum"].dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (s.contains("minimum") && !(x >= s["minimum"].get<double>())) {
      errors.push_back(where + ": " + v.dump() + " < minimum " + s["minimum"].dump());
    }
    if (s.contains("exclusiveMinimum") && !(x > s["exclusiveMinimum"].get<double>())) {
      errors.push_back(where + ": " + v.dump() + " must be > " + s["exclusiveMinimum"].dump());
    }
    if (s.contains("maximum") && !(x <= s["maximum"].get<double>())) {
      errors.push_back(where + ": " + v.dump() + " > maximum " + s["maximum"].dump());
    }
  }
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
      errors.push_back(where + ": needs at least " + s["minItems"].dump() + " items");
    }
    if (s.contains("items")) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        ValidateAt(v[k], s["items"], path + "/" + std::to_string(k), errors);
      }
    }
  }
  if (v.is_object()) {
    const Json props = s.value("properties", Json::object());
    for (auto& [key, sub] : v.items()) {
      if (props.contains(key)) {
        ValidateAt(sub, props[key], path + "/" + key, errors);
      } else if (s.contains("additionalProperties") && !s["additionalProperties"].get<bool>()) {
        errors.push_back(where + ": unknown key '" + key + "'");
      }
    }
    for (const auto& key : s.value("required", Json::array())) {
      if (!v.contains(key.get<std::string>())) {
        errors.push_back(where + ": missing required key '" + key.get<std::string>() + "'");
      }
    }
  }
}

// Fills absent keys from "default", recursing into nested objects.
Json WithDefaults(const Json& v, const Json& s) {
  if (!v.is_object() || !s.contains("properties")) return v;
  Json out = v;
  for (auto& [key, sub] : s["properties"].items()) {
    if (!out.contains(key)) {
      if (sub.contains("default")) out[key] = sub["default"];
    } else {
      out[key] = WithDefaults(out[key], sub);
    }
  }
  return out;
}

// Integer-valued floats (4000.0) become integers so that equal configs
// serialize identically.
Json Normalize(const Json& v, const Json& s) {
  if (s.value("type", "") == "integer" && v.is_number_float()) {
    return static_cast<std::int64_t>(v.get<double>());
  }
  if (v.is_array() && s.contains("items")) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(Normalize(e, s["items"]));
    return out;
  }
  if (v.is_object() && s.contains("properties")) {
    Json out = v;
    for (auto& [key, sub] : s["properties"].items()) {
      if (out.contains(key)) out[key] = Normalize(out[key], sub);
    }
    return out;
  }
  return v;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> kNames = {"certify", "stability", "scaling",
                                                  "kernel-metric", "sgd", "schedule",
                                                  "demo-rosenbrock"};
  return kNames;
}

bool IsCommand(const std::string& name) {
  const auto& names = CommandNames();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Json ConfigSchema(const std::string& command) {
  Json schema = {
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "csl " + command + " config"},
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"command"}},
      {"properties",
       {{"command", {{"type", "string"}, {"enum", {command}}}},
        {"seed", {{"type", "integer"}, {"minimum", 0}, {"default", 0}}},
        {"output_dir", {{"type", "string"}, {"default", "csl-out"}}},
        {"params", ParamsSchema(command)}}}};
  return schema;
}

std::vector<std::string> Validate(const Json& value, const Json& schema) {
  std::vector<std::string> errors;
  ValidateAt(value, schema, "", errors);
  return errors;
}

ExperimentConfig ParseConfig(const Json& doc) {
  if (!doc.is_object()) Throw(ErrorKind::kConfigInvalid, "config must be a JSON object");
  if (!doc.contains("command") || !doc["command"].is_string()) {
    Throw(ErrorKind::kConfigInvalid, "config needs a string 'command'");
  }
  const std::string command = doc["command"];
  if (!IsCommand(command)) Throw(ErrorKind::kConfigInvalid, "unknown command '" + command + "'");
  const Json schema = ConfigSchema(command);
  const auto errors = Validate(doc, schema);
  if (!errors.empty()) {
    std::string msg = "config invalid:";
    for (const auto& e : errors) msg += "\n  " + e;
    Throw(ErrorKind::kConfigInvalid, msg);
  }
  const Json full = Normalize(WithDefaults(doc, schema), schema);
  ExperimentConfig c;
  c.command = command;
  c.seed = full["seed"].get<std::uint64_t>();
  c.output_dir = full["output_dir"];
  c.params = full["params"];
  return c;
}

Json ToJson(const ExperimentConfig& config) {
  return {{"command", config.command},
          {"seed", config.seed},
          {"output_dir", config.output_dir},
          {"params", config.params}};
}

ExperimentConfig DefaultConfig(const std::string& command) {
  return ParseConfig(Json{{"command", command}});
}

std::string ConfigHash(const ExperimentConfig& config) {
  const Json canonical = {
      {"command", config.command}, {"params", config.params}, {"seed", config.seed}};
  return Sha256Hex(canonical.dump());
}

}  // namespace csl::cli
