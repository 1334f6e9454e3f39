#pragma once

#include <string>
#include <vector>

namespace csl::cli {

struct Series {
  enum class Style { kLine, kDashed, kPoints };
  std::string label;
  std::vector<double> x, y;
  Style style = Style::kLine;
  double marker = 2.0;  // point radius
};

struct Panel {
  std::string title;
  std::string x_label, y_label;
  bool log_x = false, log_y = false;
  std::vector<Series> series;
  std::vector<std::string> notes;  // joined into a subtitle line
};

// Panels are laid out left to right on a fixed 560×400 canvas each. Output
// depends only on the inputs: no timestamps, fixed number formatting, fonts
// by family name. Non-finite points, and non-positive ones on log axes, are
// skipped. A panel with no drawable points gets axes over [0, 1].
std::string RenderSvg(const std::vector<Panel>& panels);

}  // namespace csl::cli
