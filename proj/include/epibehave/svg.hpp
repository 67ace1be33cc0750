#ifndef EPIBEHAVE_SVG_HPP
#define EPIBEHAVE_SVG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace epibehave::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color;  // empty -> palette by index
  bool dashed = false;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 480;
  std::optional<double> v_line;  // vertical reference line at x
  std::optional<double> h_line;  // horizontal reference line at y
};

// Self-contained SVG document with axes, tick labels and one polyline
// per series; single-point series render as a marker. Output is a pure
// function of the inputs. Throws EmptySeries when no series has points.
std::string render(const ChartOptions& opts, const std::vector<Series>& data);

}  // namespace epibehave::svg

#endif
