#include "plots.h"

#include <cmath>
#include <cstdio>
#include <map>

#include "csl/dynsys/trajectory.h"
#include "svg.h"

namespace csl::cli {

namespace {

using Style = Series::Style;

// Column name → values, with null mapped to NaN.
using Columns = std::map<std::string, std::vector<double>>;

Columns ReadColumns(const Json& report) {
  Columns out;
  if (!report.contains("curves")) return out;
  const Json& c = report["curves"];
  const auto& names = c.value("columns", Json::array());
  const auto& values = c.value("values", Json::array());
  for (std::size_t k = 0; k < names.size() && k < values.size(); ++k) {
    auto& col = out[names[k].get<std::string>()];
    for (const auto& v : values[k]) col.push_back(v.is_number() ? v.get<double>() : NAN);
  }
  return out;
}

const std::vector<double>& Col(const Columns& c, const std::string& name) {
  static const std::vector<double> kEmpty;
  const auto it = c.find(name);
  return it == c.end() ? kEmpty : it->second;
}

// Rows of `c` whose `key` column equals `value`.
Columns Filter(const Columns& c, const std::string& key, double value) {
  Columns out;
  const auto& k = Col(c, key);
  for (const auto& [name, col] : c) {
    auto& dst = out[name];
    for (std::size_t i = 0; i < k.size() && i < col.size(); ++i) {
      if (k[i] == value) dst.push_back(col[i]);
    }
  }
  return out;
}

std::vector<double> Distinct(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || out.back() != x) out.push_back(x);
  }
  return out;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string Fmt(const Json& report, const char* key) {
  return report.contains(key) && report[key].is_number() ? Short(report[key].get<double>()) : "n/a";
}

Panel LogLogFit(const std::string& title, const std::string& y_label, const std::vector<double>& n,
                const std::vector<double>& y, const Json& fit) {
  Panel p{title, "n", y_label, true, true, {}, {}};
  p.series.push_back({"measured", n, y, Style::kPoints});
  if (fit.is_object() && fit.value("degenerate", true) == false && !n.empty()) {
    const double slope = fit["slope"], intercept = fit["intercept"];
    std::vector<double> fy;
    for (double x : n) fy.push_back(std::exp(intercept) * std::pow(x, slope));
    p.series.push_back({"fit", n, fy, Style::kLine});
    p.notes.push_back("slope = " + Short(slope));
  } else {
    p.notes.push_back("slope = n/a");
  }
  return p;
}

std::vector<NamedFile> Plots(const Json& report) {
  const std::string command = report.value("command", "");
  const Columns c = ReadColumns(report);
  std::vector<NamedFile> out;
  auto add = [&](const std::string& name, std::vector<Panel> panels) {
    out.push_back({name, RenderSvg(panels)});
  };

  if (command == "certify") {
    Panel p{"distance between trajectories", "t", "d_M", false, true, {}, {}};
    if (!Col(c, "t").empty()) {
      p.series.push_back({"distance", Col(c, "t"), Col(c, "distance"), Style::kLine});
      p.series.push_back({"envelope", Col(c, "t"), Col(c, "envelope"), Style::kDashed});
    }
    if (report.contains("certificate")) {
      p.notes.push_back("verdict: " + report["certificate"].value("verdict", std::string("?")));
      p.notes.push_back("lambda = " + Fmt(report["certificate"], "lambda_min_observed"));
    }
    add("distance.svg", {p});
  } else if (command == "stability") {
    Panel p{"S vs S' trajectories", "t", "distance", false, false, {}, {}};
    if (!Col(c, "t").empty()) {
      p.series.push_back({"||theta_S - theta_S'||", Col(c, "t"), Col(c, "distance"), Style::kLine});
      p.series.push_back({"envelope", Col(c, "t"), Col(c, "envelope"), Style::kDashed});
    }
    if (report.contains("bound")) p.notes.push_back(report["bound"].value("formula", std::string()));
    add("distance.svg", {p});
  } else if (command == "scaling") {
    const Json fit = report.value("fit", Json());
    Panel p = LogLogFit("sup loss gap vs n", "mean sup loss gap", Col(c, "n"), Col(c, "mean_gap"), fit);
    if (!Col(c, "n").empty()) {
      p.series.push_back({"mean bound", Col(c, "n"), Col(c, "mean_bound"), Style::kDashed});
    }
    add("scaling.svg", {p});
  } else if (command == "kernel-metric") {
    Panel left{"chi/lambda_M vs chi", "chi", "chi/lambda_M", false, true, {}, {}};
    Panel right{"chi/lambda_M vs lambda_M", "lambda_M", "chi/lambda_M", false, true, {}, {}};
    if (!Col(c, "chi").empty()) {
      left.series.push_back({"random Q", Col(c, "chi"), Col(c, "ratio"), Style::kPoints});
      right.series.push_back({"random Q", Col(c, "lambda"), Col(c, "ratio"), Style::kPoints});
    }
    if (report.contains("identity")) {
      const Json& id = report["identity"];
      if (id["chi"].is_number() && id["ratio"].is_number() && id["lambda"].is_number()) {
        left.series.push_back({"M = I", {id["chi"].get<double>()}, {id["ratio"].get<double>()}, Style::kPoints, 5.0});
        right.series.push_back({"M = I", {id["lambda"].get<double>()}, {id["ratio"].get<double>()}, Style::kPoints, 5.0});
      }
      left.notes.push_back("violations: " + report.value("violations", Json(0)).dump());
    }
    add("metric_ratio.svg", {left, right});
  } else if (command == "sgd") {
    Panel p{"paired SGD distance", "step", "E[d_t]", false, false, {}, {}};
    std::vector<double> ns, eps;
    for (const auto& pt : report.value("points", Json::array())) {
      const double n = pt["n"];
      const Columns rows = Filter(c, "n", n);
      p.series.push_back({"n=" + Short(n), Col(rows, "t"), Col(rows, "mean_distance"), Style::kLine});
      p.series.push_back({"envelope n=" + Short(n), Col(rows, "t"), Col(rows, "envelope"), Style::kDashed});
      ns.push_back(n);
      eps.push_back(pt["eps_hat"].is_number() ? pt["eps_hat"].get<double>() : NAN);
    }
    add("distance.svg", {p});
    add("scaling.svg", {LogLogFit("eps_hat vs n", "eps_hat", ns, eps, report.value("fit", Json()))});
  } else if (command == "schedule") {
    Panel p{"constant-rate control", "t", "sup loss gap", false, false, {}, {}};
    for (double n : Distinct(Col(c, "n"))) {
      const Columns rows = Filter(c, "n", n);
      p.series.push_back({"gap n=" + Short(n), Col(rows, "t"), Col(rows, "control_gap"), Style::kLine});
      p.series.push_back({"bound n=" + Short(n), Col(rows, "t"), Col(rows, "control_envelope"), Style::kDashed});
    }
    add("control.svg", {p});
  } else if (command == "demo-rosenbrock") {
    Panel err{"distance to (1,1)", "t", "error", false, true, {}, {}};
    Panel path{"trajectories", "x", "y", false, false, {}, {}};
    for (double s : Distinct(Col(c, "start"))) {
      const Columns rows = Filter(c, "start", s);
      err.series.push_back({"start " + Short(s), Col(rows, "t"), Col(rows, "error"), Style::kLine});
      path.series.push_back({"start " + Short(s), Col(rows, "x"), Col(rows, "y"), Style::kLine});
    }
    add("convergence.svg", {err, path});
  } else {
    add("plot.svg", {Panel{command, "x", "y", false, false, {}, {}}});
  }
  return out;
}

}  // namespace

std::string CurvesCsv(const Json& report) {
  if (!report.contains("curves")) return "";
  const Json& names = report["curves"]["columns"];
  const Json& values = report["curves"]["values"];
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    out += (k ? "," : "") + names[k].get<std::string>();
  }
  out += "\n";
  const std::size_t rows = values.empty() ? 0 : values[0].size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (k) out += ",";
      const Json& v = values[k][r];
      if (v.is_number()) out += dynsys::FormatDouble(v.get<double>());
    }
    out += "\n";
  }
  return out;
}

std::vector<NamedFile> RenderPlots(const Json& report) { return Plots(report); }

}  // namespace csl::cli
