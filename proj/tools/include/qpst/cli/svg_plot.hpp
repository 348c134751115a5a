#pragma once

// Minimal static line charts written as SVG text.

#include <string>
#include <utility>
#include <vector>

namespace qpst::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  // y range; equal bounds mean "fit to data".
  double y_min = 0.0;
  double y_max = 1.0;
  int width = 720;
  int height = 440;
};

std::string render_svg(const LineChart& chart);

}  // namespace qpst::cli
