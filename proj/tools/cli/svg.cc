#include "svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace csl::cli {

namespace {

constexpr double kWidth = 560, kHeight = 400;
constexpr double kLeft = 72, kRight = 16, kTop = 48, kBottom = 52;
constexpr const char* kFont = "DejaVu Sans, Helvetica, Arial, sans-serif";
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string F(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // in transformed units (log10 when log)
  std::vector<double> ticks;  // transformed units

  double Transform(double v) const { return log ? std::log10(v) : v; }
  bool Drawable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  std::string TickLabel(double t) const { return Label(log ? std::pow(10.0, t) : t); }
};

double NiceStep(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0) * mag;
}

Axis MakeAxis(bool log, const std::vector<double>& values, double headroom) {
  Axis a;
  a.log = log;
  double lo = INFINITY, hi = -INFINITY;
  for (double v : values) {
    if (!a.Drawable(v)) continue;
    lo = std::min(lo, a.Transform(v));
    hi = std::max(hi, a.Transform(v));
  }
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  hi += headroom * (hi - lo);
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
    const double stride = std::max(1.0, std::ceil((hi - lo) / 8.0));
    for (double t = lo; t <= hi + 1e-9; t += stride) a.ticks.push_back(t);
  } else {
    const double step = NiceStep(hi - lo);
    lo = std::floor(lo / step) * step;
    hi = std::ceil(hi / step) * step;
    for (double t = lo; t <= hi + 0.5 * step; t += step) {
      a.ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

void DrawPanel(std::ostringstream& out, const Panel& p, double x0) {
  std::vector<double> xs, ys;
  for (const auto& s : p.series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  // Headroom on y keeps the legend clear of the data.
  const Axis ax = MakeAxis(p.log_x, xs, 0.0), ay = MakeAxis(p.log_y, ys, 0.2);
  const double pl = x0 + kLeft, pr = x0 + kWidth - kRight, pt = kTop, pb = kHeight - kBottom;
  auto sx = [&](double v) { return pl + (ax.Transform(v) - ax.lo) / (ax.hi - ax.lo) * (pr - pl); };
  auto sy = [&](double v) { return pb - (ay.Transform(v) - ay.lo) / (ay.hi - ay.lo) * (pb - pt); };

  out << "<g>\n";
  out << "<text x=\"" << F(x0 + kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"14\">" << Escape(p.title) << "</text>\n";
  out << "<rect x=\"" << F(pl) << "\" y=\"" << F(pt) << "\" width=\"" << F(pr - pl)
      << "\" height=\"" << F(pb - pt) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (double t : ax.ticks) {
    const double x = pl + (t - ax.lo) / (ax.hi - ax.lo) * (pr - pl);
    out << "<line x1=\"" << F(x) << "\" y1=\"" << F(pb) << "\" x2=\"" << F(x) << "\" y2=\""
        << F(pb + 5) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << F(x) << "\" y=\"" << F(pb + 18) << "\" text-anchor=\"middle\" "
        << "font-size=\"11\">" << ax.TickLabel(t) << "</text>\n";
  }
  for (double t : ay.ticks) {
    const double y = pb - (t - ay.lo) / (ay.hi - ay.lo) * (pb - pt);
    out << "<line x1=\"" << F(pl - 5) << "\" y1=\"" << F(y) << "\" x2=\"" << F(pl) << "\" y2=\""
        << F(y) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << F(pl - 8) << "\" y=\"" << F(y + 4) << "\" text-anchor=\"end\" "
        << "font-size=\"11\">" << ay.TickLabel(t) << "</text>\n";
  }
  out << "<text x=\"" << F((pl + pr) / 2) << "\" y=\"" << F(kHeight - 12)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << Escape(p.x_label) << "</text>\n";
  out << "<text transform=\"translate(" << F(x0 + 16) << "," << F((pt + pb) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << Escape(p.y_label)
      << "</text>\n";

  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const auto& s = p.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const std::size_t count = std::min(s.x.size(), s.y.size());
    if (s.style == Series::Style::kPoints) {
      for (std::size_t i = 0; i < count; ++i) {
        if (!ax.Drawable(s.x[i]) || !ay.Drawable(s.y[i])) continue;
        out << "<circle cx=\"" << F(sx(s.x[i])) << "\" cy=\"" << F(sy(s.y[i]))
            << "\" r=\"" << F(s.marker) << "\" fill=\"" << color << "\"/>\n";
      }
    } else {
      std::string points;
      for (std::size_t i = 0; i < count; ++i) {
        if (!ax.Drawable(s.x[i]) || !ay.Drawable(s.y[i])) continue;
        points += F(sx(s.x[i])) + "," + F(sy(s.y[i])) + " ";
      }
      if (!points.empty()) {
        points.pop_back();
        out << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\""
            << (s.style == Series::Style::kDashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
      }
    }
    const double ly = pt + 16 + 16 * static_cast<double>(k);
    out << "<rect x=\"" << F(pr - 190) << "\" y=\"" << F(ly - 8) << "\" width=\"12\" "
        << "height=\"3\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << F(pr - 172) << "\" y=\"" << F(ly - 3) << "\" font-size=\"11\">"
        << Escape(s.label) << "</text>\n";
  }
  if (!p.notes.empty()) {
    std::string line;
    for (const auto& note : p.notes) line += (line.empty() ? "" : "; ") + note;
    out << "<text x=\"" << F(x0 + kWidth / 2) << "\" y=\"38\" text-anchor=\"middle\" "
        << "font-size=\"11\">" << Escape(line) << "</text>\n";
  }
  out << "</g>\n";
}

}  // namespace

std::string RenderSvg(const std::vector<Panel>& panels) {
  const double width = kWidth * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << F(width) << "\" height=\""
      << F(kHeight) << "\" viewBox=\"0 0 " << F(width) << " " << F(kHeight)
      << "\" font-family=\"" << kFont << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    DrawPanel(out, panels[k], kWidth * static_cast<double>(k));
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace csl::cli
