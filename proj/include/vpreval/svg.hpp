#pragma once

#include <string>
#include <vector>

namespace vpreval {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool bars = false;  // render as a bar chart instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 640;
  int height = 480;
};

// Self-contained SVG with axes, tick labels and a legend. Output is a pure
// function of the spec (numbers formatted with fixed precision), so
// identical input data produces byte-identical files.
std::string render_svg(const PlotSpec& spec);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace vpreval
