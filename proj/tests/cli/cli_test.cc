#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "artifacts.h"
#include "commands.h"
#include "config.h"
#include "csl/error.h"
#include "plots.h"
#include "run.h"
#include "svg.h"

namespace csl::cli {
namespace {

namespace fs = std::filesystem;

template <typename F>
ErrorKind KindOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected csl::Error";
  return ErrorKind::kInvalidArgument;
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("csl_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

// Random value satisfying `schema`, for round-trip properties.
Json RandomValue(const Json& schema, std::mt19937_64& rng) {
  if (schema.contains("enum")) {
    const auto& e = schema["enum"];
    return e[std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng)];
  }
  const std::string type = schema.value("type", "");
  const double lo = schema.value("minimum", schema.value("exclusiveMinimum", 0.0));
  const double hi = schema.value("maximum", lo + 100.0);
  if (type == "integer") {
    return std::uniform_int_distribution<std::int64_t>(static_cast<std::int64_t>(std::ceil(lo)),
                                                        static_cast<std::int64_t>(hi))(rng);
  }
  if (type == "number") {
    double v = std::uniform_real_distribution<double>(lo, hi)(rng);
    if (schema.contains("exclusiveMinimum") && v <= lo) v = hi;
    return v;
  }
  if (type == "boolean") return std::bernoulli_distribution(0.5)(rng);
  if (type == "string") return "dir" + std::to_string(rng() % 1000);
  if (type == "array") {
    Json out = Json::array();
    const std::size_t n = schema.value("minItems", std::size_t{0}) + rng() % 4;
    for (std::size_t k = 0; k < n; ++k) out.push_back(RandomValue(schema["items"], rng));
    return out;
  }
  Json out = Json::object();
  const Json properties = schema.value("properties", Json::object());
  for (auto& [key, sub] : properties.items()) {
    if (std::bernoulli_distribution(0.7)(rng)) out[key] = RandomValue(sub, rng);
  }
  return out;
}

TEST(ConfigTest, DefaultsRoundTrip) {
  for (const auto& command : CommandNames()) {
    const auto c = DefaultConfig(command);
    EXPECT_EQ(ParseConfig(ToJson(c)), c) << command;
    EXPECT_TRUE(Validate(ToJson(c), ConfigSchema(command)).empty()) << command;
  }
}

TEST(ConfigTest, RandomConfigsRoundTrip) {
  std::mt19937_64 rng(5);
  for (const auto& command : CommandNames()) {
    const Json schema = ConfigSchema(command);
    for (int k = 0; k < 50; ++k) {
      Json doc = RandomValue(schema, rng);
      doc["command"] = command;
      const auto c = ParseConfig(doc);
      const auto back = ParseConfig(Json::parse(ToJson(c).dump()));
      EXPECT_EQ(back, c) << doc.dump();
    }
  }
}

TEST(ConfigTest, RejectsUnknownKeysAtEveryLevel) {
  const Json docs[] = {
      {{"command", "sgd"}, {"sedd", 3}},
      {{"command", "sgd"}, {"params", {{"stepz", 3}}}},
      {{"command", "sgd"}, {"params", {{"family", {{"nam", "ridge"}}}}}},
  };
  for (const auto& d : docs) {
    EXPECT_EQ(KindOf([&] { ParseConfig(d); }), ErrorKind::kConfigInvalid) << d.dump();
  }
}

TEST(ConfigTest, RejectsBadValues) {
  const Json docs[] = {
      {{"command", "sgd"}, {"params", {{"seeds", 10}}}},
      {{"command", "sgd"}, {"params", {{"eta", 0}}}},
      {{"command", "sgd"}, {"params", {{"eta", "fast"}}}},
      {{"command", "sgd"}, {"params", {{"sampler", "bootstrap"}}}},
      {{"command", "sgd"}, {"params", {{"b", 2.5}}}},
      {{"command", "sgd"}, {"seed", -1}},
      {{"command", "scaling"}, {"params", {{"n_list", {16, 32}}}}},
      {{"command", "nope"}},
      {{"seed", 1}},
      Json::array(),
  };
  for (const auto& d : docs) {
    EXPECT_EQ(KindOf([&] { ParseConfig(d); }), ErrorKind::kConfigInvalid) << d.dump();
  }
}

TEST(ConfigTest, ValidationMessagesNameTheLocation) {
  const auto errors = Validate({{"command", "sgd"}, {"params", {{"family", {{"dim", 0}}}}}},
                               ConfigSchema("sgd"));
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0].rfind("/params/family/dim", 0), 0u) << errors[0];
}

TEST(ConfigTest, IntegerValuedFloatsNormalize) {
  const auto a = ParseConfig({{"command", "kernel-metric"}, {"params", {{"n_random", 4000.0}}}});
  const auto b = ParseConfig({{"command", "kernel-metric"}, {"params", {{"n_random", 4000}}}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(ToJson(a).dump(), ToJson(b).dump());
}

TEST(ConfigTest, HashIgnoresOutputDir) {
  auto a = DefaultConfig("certify");
  auto b = a;
  b.output_dir = "elsewhere";
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  b.seed = 1;
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
  EXPECT_EQ(ConfigHash(a).size(), 64u);
}

TEST(ArtifactsTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(ArtifactsTest, AtomicWriteLeavesOnlyTarget) {
  const fs::path dir = TempDir("atomic");
  WriteFileAtomic(dir / "sub" / "a.txt", "first");
  WriteFileAtomic(dir / "sub" / "a.txt", "second");
  EXPECT_EQ(ReadFile(dir / "sub" / "a.txt"), "second");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir / "sub"), fs::directory_iterator()), 1);
  fs::remove_all(dir);
}

TEST(CommandTest, CertifyQuadraticRateIsGamma) {
  auto c = DefaultConfig("certify");
  c.params["gamma"] = 0.7;
  c.params["dim"] = 4;
  const Json r = RunCommand(c, 1);
  EXPECT_EQ(r["certificate"]["verdict"], "contracting");
  EXPECT_NEAR(r["certificate"]["lambda_min_observed"].get<double>(), 0.7, 1e-12);
}

TEST(CommandTest, KernelMetricFourThousandSamples) {
  auto c = DefaultConfig("kernel-metric");
  c.seed = 7;
  const Json r = RunCommand(c, 1);
  EXPECT_EQ(r["n_random"], 4000);
  EXPECT_EQ(r["violations"], 0);
  EXPECT_LE(r["q_identity_rate_error"].get<double>(), 1e-8);
}

TEST(CommandTest, RosenbrockDemoConverges) {
  const Json r = RunCommand(DefaultConfig("demo-rosenbrock"), 1);
  EXPECT_TRUE(r["all_within_1e-3"].get<bool>());
  for (const auto& e : r["final_errors"]) EXPECT_LE(e.get<double>(), 1e-3);
  EXPECT_EQ(r["local_certificate"]["verdict"], "contracting");
}

TEST(CommandTest, ReportsEmbedBoundFormulaAndParameters) {
  auto c = DefaultConfig("stability");
  c.params["n"] = 30;
  c.params["t_end"] = 2.0;
  const Json r = RunCommand(c, 1);
  EXPECT_EQ(r["bound"]["name"], "contraction");
  EXPECT_FALSE(r["bound"]["formula"].get<std::string>().empty());
  for (const char* key : {"chi", "L", "xi", "lambda", "C", "n"}) {
    EXPECT_TRUE(r["bound"]["params"].contains(key)) << key;
  }
  EXPECT_EQ(r["config"]["params"], c.params);
}

TEST(CommandTest, IndexOutOfRangeIsConfigError) {
  auto c = DefaultConfig("stability");
  c.params["n"] = 5;
  c.params["index"] = 5;
  EXPECT_EQ(KindOf([&] { RunCommand(c, 1); }), ErrorKind::kConfigInvalid);
}

TEST(CommandTest, NumericalFailureNamesOperation) {
  auto c = DefaultConfig("certify");
  c.params["system"] = "linear";
  c.params["matrix"] = {{1.0, 0.0}, {0.0, -1.0}};
  c.params["metric"] = "lyapunov";
  try {
    RunCommand(c, 1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotHurwitz);
    EXPECT_EQ(e.message().rfind("SolveLyapunov: ", 0), 0u) << e.what();
    EXPECT_EQ(ExitCodeFor(e), kExitNumericalFailure);
  }
}

TEST(RunTest, IdenticalConfigsGiveIdenticalOutputs) {
  auto c = DefaultConfig("kernel-metric");
  c.params["n_random"] = 300;
  c.output_dir = TempDir("det_a").string();
  const auto a = RunExperiment(c, 1);
  c.output_dir = TempDir("det_b").string();
  const auto b = RunExperiment(c, 2);
  ASSERT_EQ(a.outputs.size(), b.outputs.size());
  for (std::size_t k = 0; k < a.outputs.size(); ++k) {
    EXPECT_EQ(a.outputs[k].file, b.outputs[k].file);
    EXPECT_EQ(a.outputs[k].sha256, b.outputs[k].sha256) << a.outputs[k].file;
  }
  EXPECT_EQ(ReadFile(fs::path(c.output_dir) / "report.json"),
            ReadFile(TempDir("det_a").parent_path() / "csl_cli_test_det_b" / "report.json"));
  const Json manifest = Json::parse(ReadFile(fs::path(c.output_dir) / "manifest.json"));
  EXPECT_EQ(manifest["config_hash"], ConfigHash(c));
  EXPECT_EQ(manifest["tool_version"], std::string(ToolVersion()));
  for (const auto& o : manifest["outputs"]) {
    EXPECT_EQ(o["sha256"], Sha256Hex(ReadFile(fs::path(c.output_dir) / o["file"].get<std::string>())));
  }
  fs::remove_all(c.output_dir);
}

TEST(RunTest, RenderReproducesPlots) {
  auto c = DefaultConfig("schedule");
  c.params["n_list"] = {32};
  c.params["t_end"] = 2.0;
  c.output_dir = TempDir("render").string();
  RunExperiment(c, 1);
  const fs::path dir = c.output_dir;
  const auto written = RenderReport(dir / "report.json", dir / "again");
  ASSERT_EQ(written.size(), 1u);
  EXPECT_EQ(ReadFile(written[0]), ReadFile(dir / "control.svg"));
  EXPECT_EQ(KindOf([&] { RenderReport(dir / "absent.json"); }), ErrorKind::kMissingReport);
  WriteFileAtomic(dir / "broken.json", "{");
  EXPECT_EQ(KindOf([&] { RenderReport(dir / "broken.json"); }), ErrorKind::kMissingReport);
  fs::remove_all(dir);
}

TEST(PlotTest, EmptyPanelIsAxesOnly) {
  const std::string svg = RenderSvg({Panel{"empty", "x", "y", false, false, {}, {}}});
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<rect"), std::string::npos);
  EXPECT_EQ(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg, RenderSvg({Panel{"empty", "x", "y", false, false, {}, {}}}));
}

TEST(PlotTest, EmptyCurvesRenderAxesOnly) {
  const Json report = {{"command", "stability"},
                       {"curves", {{"columns", Json::array()}, {"values", Json::array()}}}};
  const auto plots = RenderPlots(report);
  ASSERT_EQ(plots.size(), 1u);
  EXPECT_EQ(plots[0].contents.find("<polyline"), std::string::npos);
  EXPECT_EQ(CurvesCsv(report), "\n");
}

TEST(PlotTest, LogAxesSkipNonPositivePoints) {
  Panel p{"log", "n", "y", true, true, {}, {}};
  p.series.push_back({"s", {1, 10, 100}, {0.0, -1.0, 5.0}, Series::Style::kPoints});
  const std::string svg = RenderSvg({p});
  std::size_t circles = 0;
  for (std::size_t pos = svg.find("<circle"); pos != std::string::npos;
       pos = svg.find("<circle", pos + 1)) {
    ++circles;
  }
  EXPECT_EQ(circles, 1u);
}

TEST(PlotTest, ScalingPlotAnnotatesSlope) {
  const Json report = {
      {"command", "scaling"},
      {"fit", {{"slope", -1.0}, {"intercept", 0.0}, {"residual", 0.0}, {"degenerate", false}}},
      {"curves", {{"columns", {"n", "mean_gap", "max_gap", "mean_bound"}},
                  {"values", {{8, 16}, {0.125, 0.0625}, {0.2, 0.1}, {1, 0.5}}}}}};
  const auto plots = RenderPlots(report);
  ASSERT_EQ(plots.size(), 1u);
  EXPECT_EQ(plots[0].name, "scaling.svg");
  EXPECT_NE(plots[0].contents.find("slope = -1"), std::string::npos);
}

TEST(PlotTest, CsvUsesShortestDoublesAndBlankNulls) {
  const Json report = {{"curves", {{"columns", {"a", "b"}},
                                   {"values", {{0.1, 1e-300}, {nullptr, 2.0}}}}}};
  EXPECT_EQ(CurvesCsv(report), "a,b\n0.1,\n1e-300,2\n");
}

}  // namespace
}  // namespace csl::cli
