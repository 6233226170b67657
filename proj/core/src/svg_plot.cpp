// Copyright 2026 The foersim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "foersim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace foersim {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct AxisMap {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double pixel_lo = 0.0, pixel_hi = 1.0;

  double transform(double v) const { return log ? std::log10(v) : v; }
  double to_pixel(double v) const {
    const double t = (transform(v) - transform(lo)) / (transform(hi) - transform(lo));
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

bool usable(double v, bool log_axis) {
  return std::isfinite(v) && (!log_axis || v > 0.0);
}

std::string num(double v) {
  std::ostringstream oss;
  oss.precision(4);
  oss << v;
  return oss.str();
}

std::vector<double> ticks(const AxisMap& axis) {
  std::vector<double> out;
  if (axis.log) {
    const int e_lo = static_cast<int>(std::floor(std::log10(axis.lo)));
    const int e_hi = static_cast<int>(std::ceil(std::log10(axis.hi)));
    for (int e = e_lo; e <= e_hi; ++e) {
      const double v = std::pow(10.0, e);
      if (v >= axis.lo * 0.999 && v <= axis.hi * 1.001) out.push_back(v);
    }
    if (out.size() < 2) out = {axis.lo, axis.hi};
  } else {
    const int n = 5;
    for (int i = 0; i <= n; ++i) out.push_back(axis.lo + (axis.hi - axis.lo) * i / n);
  }
  return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size())
      throw std::invalid_argument("svg plot: series x/y length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], spec.log_x) || !usable(s.y[i], spec.log_y)) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  for (const auto& ref : spec.references)
    if (usable(ref.y, spec.log_y)) {
      y_lo = std::min(y_lo, ref.y);
      y_hi = std::max(y_hi, ref.y);
    }
  if (!std::isfinite(x_lo) || !std::isfinite(y_lo))
    throw std::invalid_argument("svg plot: no plottable points");
  if (x_lo == x_hi) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_lo == y_hi) {
    y_lo = spec.log_y ? y_lo * 0.5 : y_lo - 0.5;
    y_hi = spec.log_y ? y_hi * 2.0 : y_hi + 0.5;
  }
  if (!spec.log_y) {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  AxisMap x_axis{x_lo, x_hi, spec.log_x, kLeft, kWidth - kRight};
  AxisMap y_axis{y_lo, y_hi, spec.log_y, kHeight - kBottom, kTop};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << spec.title << "</text>\n";

  for (double t : ticks(x_axis)) {
    const double px = x_axis.to_pixel(t);
    svg << "<line x1=\"" << px << "\" y1=\"" << kTop << "\" x2=\"" << px << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << px << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << num(t) << "</text>\n";
  }
  for (double t : ticks(y_axis)) {
    const double py = y_axis.to_pixel(t);
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kWidth - kRight
        << "\" y2=\"" << py << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(t) << "</text>\n";
  }
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
      << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-size=\"13\">" << spec.x_label << "</text>\n";
  svg << "<text x=\"20\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 " << kHeight / 2
      << ")\">" << spec.y_label << "</text>\n";

  for (const auto& ref : spec.references) {
    if (!usable(ref.y, spec.log_y)) continue;
    const double py = y_axis.to_pixel(ref.y);
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kWidth - kRight
        << "\" y2=\"" << py << "\" stroke=\"#444444\" stroke-dasharray=\"6,4\"/>\n";
    svg << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << py - 5
        << "\" text-anchor=\"end\" font-size=\"11\">" << ref.label << "</text>\n";
  }

  int color = 0;
  double legend_y = kTop + 16;
  for (const auto& s : series) {
    const char* stroke = kColors[color % 8];
    std::ostringstream points;
    bool open = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], spec.log_x) || !usable(s.y[i], spec.log_y)) {
        open = false;
        continue;
      }
      if (!open) {
        if (points.tellp() > 0) {
          svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.8\" points=\""
              << points.str() << "\"/>\n";
          points.str("");
        }
        open = true;
      }
      points << x_axis.to_pixel(s.x[i]) << "," << y_axis.to_pixel(s.y[i]) << " ";
    }
    if (points.tellp() > 0)
      svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.8\" points=\""
          << points.str() << "\"/>\n";
    svg << "<rect x=\"" << kLeft + 10 << "\" y=\"" << legend_y - 9
        << "\" width=\"18\" height=\"4\" fill=\"" << stroke << "\"/>\n";
    svg << "<text x=\"" << kLeft + 34 << "\" y=\"" << legend_y << "\" font-size=\"11\">"
        << s.label << "</text>\n";
    legend_y += 15;
    ++color;
  }

  svg << "</svg>\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("svg plot: cannot open for writing: " + path);
  out << svg.str();
}

}  // namespace foersim
