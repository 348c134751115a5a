#include "qpst/cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qpst::cli {

namespace {

std::string num(double v, const char* fmt = "%.2f") {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string escape(const std::string& s) {
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

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

}  // namespace

std::string render_svg(const LineChart& chart) {
  const double left = 70.0, right = 150.0, top = 40.0, bottom = 55.0;
  const double pw = chart.width - left - right;
  const double ph = chart.height - top - bottom;

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = chart.y_min, y_hi = chart.y_max;
  const bool fit_y = !(y_hi > y_lo);
  if (fit_y) {
    y_lo = std::numeric_limits<double>::infinity();
    y_hi = -y_lo;
  }
  for (const auto& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      if (fit_y) {
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (!(x_hi > x_lo)) {
    x_lo = x_lo == std::numeric_limits<double>::infinity() ? 0.0 : x_lo;
    x_hi = x_lo + 1.0;
  }
  if (!(y_hi > y_lo)) {
    y_lo = y_lo == std::numeric_limits<double>::infinity() ? 0.0 : y_lo - 0.5;
    y_hi = y_lo + 1.0;
  }
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\""
    << chart.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(chart.title) << "</text>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / kTicks;
    const double fy = y_lo + (y_hi - y_lo) * i / kTicks;
    o << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(sx(fx))
      << "\" y2=\"" << num(top + ph) << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(sy(fy)) << "\" x2=\"" << num(left + pw)
      << "\" y2=\"" << num(sy(fy)) << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(top + ph + 18)
      << "\" text-anchor=\"middle\">" << num(fx, "%.3g") << "</text>\n";
    o << "<text x=\"" << num(left - 8) << "\" y=\"" << num(sy(fy) + 4)
      << "\" text-anchor=\"end\">" << num(fy, "%.3g") << "</text>\n";
  }
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(chart.height - 12.0)
    << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << num(top + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const Series& s = chart.series[k];
    const char* color = kPalette[k % kPalette.size()];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i) o << ' ';
      o << num(sx(s.points[i].first)) << ',' << num(sy(s.points[i].second));
    }
    o << "\"/>\n";
    const double ly = top + 14.0 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << num(left + pw + 12) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
      << num(left + pw + 32) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << num(left + pw + 38) << "\" y=\"" << num(ly) << "\">" << escape(s.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace qpst::cli
