#include "epibehave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "epibehave/errors.hpp"

namespace epibehave::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void widen_if_degenerate() {
    if (lo == hi) {
      const double pad = std::max(0.5, std::abs(lo) * 0.1);
      lo -= pad;
      hi += pad;
    }
  }
};

// 1-2-5 tick spacing giving roughly the requested count.
std::vector<double> nice_ticks(const Range& r, int target = 6) {
  const double span = r.hi - r.lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  const double first = std::ceil(r.lo / step) * step;
  for (double v = first; v <= r.hi + 0.5 * step; v += step) {
    ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return ticks;
}

void escape_into(std::ostringstream& os, const std::string& text) {
  for (char ch : text) {
    switch (ch) {
      case '&': os << "&amp;"; break;
      case '<': os << "&lt;"; break;
      case '>': os << "&gt;"; break;
      default: os << ch;
    }
  }
}

}  // namespace

std::string render(const ChartOptions& opts, const std::vector<Series>& data) {
  bool any_points = false;
  for (const auto& s : data) any_points |= !s.points.empty();
  if (!any_points) throw EmptySeries("no points to plot");

  Range xr, yr;
  for (const auto& s : data) {
    for (const auto& [x, y] : s.points) {
      xr.include(x);
      yr.include(y);
    }
  }
  if (opts.v_line) xr.include(*opts.v_line);
  if (opts.h_line) yr.include(*opts.h_line);
  xr.widen_if_degenerate();
  yr.widen_if_degenerate();

  const double ml = 72.0, mr = 18.0, mt = 36.0, mb = 52.0;
  const double pw = opts.width - ml - mr;
  const double ph = opts.height - mt - mb;
  auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) {
    return mt + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
     << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width
     << " " << opts.height << "\">\n";
  os << "<rect width=\"" << opts.width << "\" height=\"" << opts.height
     << "\" fill=\"white\"/>\n";

  // Axes frame.
  os << "<rect x=\"" << fmt_px(ml) << "\" y=\"" << fmt_px(mt) << "\" width=\""
     << fmt_px(pw) << "\" height=\"" << fmt_px(ph)
     << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (double tx : nice_ticks(xr)) {
    const double x = px(tx);
    os << "<line x1=\"" << fmt_px(x) << "\" y1=\"" << fmt_px(mt + ph)
       << "\" x2=\"" << fmt_px(x) << "\" y2=\"" << fmt_px(mt + ph + 5)
       << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << fmt_px(x) << "\" y=\"" << fmt_px(mt + ph + 18)
       << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
       << fmt_num(tx) << "</text>\n";
  }
  for (double ty : nice_ticks(yr)) {
    const double y = py(ty);
    os << "<line x1=\"" << fmt_px(ml - 5) << "\" y1=\"" << fmt_px(y)
       << "\" x2=\"" << fmt_px(ml) << "\" y2=\"" << fmt_px(y)
       << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << fmt_px(ml - 8) << "\" y=\"" << fmt_px(y + 4)
       << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
       << fmt_num(ty) << "</text>\n";
  }

  if (opts.v_line) {
    os << "<line x1=\"" << fmt_px(px(*opts.v_line)) << "\" y1=\""
       << fmt_px(mt) << "\" x2=\"" << fmt_px(px(*opts.v_line)) << "\" y2=\""
       << fmt_px(mt + ph)
       << "\" stroke=\"#666666\" stroke-dasharray=\"3,3\"/>\n";
  }
  if (opts.h_line) {
    os << "<line x1=\"" << fmt_px(ml) << "\" y1=\"" << fmt_px(py(*opts.h_line))
       << "\" x2=\"" << fmt_px(ml + pw) << "\" y2=\""
       << fmt_px(py(*opts.h_line))
       << "\" stroke=\"#666666\" stroke-dasharray=\"3,3\"/>\n";
  }

  int color_idx = 0;
  for (const auto& s : data) {
    const std::string color =
        s.color.empty() ? kPalette[color_idx % kPaletteSize] : s.color;
    ++color_idx;
    if (s.points.empty()) continue;
    if (s.points.size() == 1) {
      os << "<circle cx=\"" << fmt_px(px(s.points[0].first)) << "\" cy=\""
         << fmt_px(py(s.points[0].second)) << "\" r=\"3\" fill=\"" << color
         << "\"/>\n";
      continue;
    }
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"6,4\"";
    os << " points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (k) os << ' ';
      os << fmt_px(px(s.points[k].first)) << ','
         << fmt_px(py(s.points[k].second));
    }
    os << "\"/>\n";
  }

  // Legend for labelled series.
  double legend_y = mt + 14.0;
  color_idx = 0;
  for (const auto& s : data) {
    const std::string color =
        s.color.empty() ? kPalette[color_idx % kPaletteSize] : s.color;
    ++color_idx;
    if (s.label.empty()) continue;
    const double lx = ml + pw - 150.0;
    os << "<line x1=\"" << fmt_px(lx) << "\" y1=\"" << fmt_px(legend_y - 4)
       << "\" x2=\"" << fmt_px(lx + 22) << "\" y2=\"" << fmt_px(legend_y - 4)
       << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (s.dashed) os << " stroke-dasharray=\"6,4\"";
    os << "/>\n<text x=\"" << fmt_px(lx + 28) << "\" y=\"" << fmt_px(legend_y)
       << "\" font-size=\"11\" font-family=\"sans-serif\">";
    escape_into(os, s.label);
    os << "</text>\n";
    legend_y += 16.0;
  }

  if (!opts.title.empty()) {
    os << "<text x=\"" << fmt_px(ml + pw / 2) << "\" y=\"" << fmt_px(mt - 12)
       << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">";
    escape_into(os, opts.title);
    os << "</text>\n";
  }
  if (!opts.x_label.empty()) {
    os << "<text x=\"" << fmt_px(ml + pw / 2) << "\" y=\""
       << fmt_px(mt + ph + 38)
       << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">";
    escape_into(os, opts.x_label);
    os << "</text>\n";
  }
  if (!opts.y_label.empty()) {
    os << "<text x=\"16\" y=\"" << fmt_px(mt + ph / 2)
       << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\""
       << " transform=\"rotate(-90 16 " << fmt_px(mt + ph / 2) << ")\">";
    escape_into(os, opts.y_label);
    os << "</text>\n";
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace epibehave::svg
