// Copyright 2026 The gossipdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gossipdp/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "gossipdp/util.hpp"

namespace gossipdp {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 610.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 390.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#ff7f0e", "#9467bd", "#8c564b"};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_svg_lines(std::ostream& out, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      if (first) {
        x_min = x_max = s.x[k];
        y_min = y_max = s.y[k];
        first = false;
      } else {
        x_min = std::min(x_min, s.x[k]);
        x_max = std::max(x_max, s.x[k]);
        y_min = std::min(y_min, s.y[k]);
        y_max = std::max(y_max, s.y[k]);
      }
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto sy = [&](double y) {
    return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << px(kWidth / 2) << "\" y=\"24\" font-size=\"15\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">"
      << title << "</text>\n";

  // axes and ticks
  out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kBottom) << "\" x2=\""
      << px(kRight) << "\" y2=\"" << px(kBottom)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\""
      << px(kLeft) << "\" y2=\"" << px(kBottom) << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double fx = x_min + (x_max - x_min) * k / 5.0;
    const double fy = y_min + (y_max - y_min) * k / 5.0;
    out << "<line x1=\"" << px(sx(fx)) << "\" y1=\"" << px(kBottom)
        << "\" x2=\"" << px(sx(fx)) << "\" y2=\"" << px(kBottom + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(sx(fx)) << "\" y=\"" << px(kBottom + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">"
        << format_g(fx) << "</text>\n";
    out << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(sy(fy))
        << "\" x2=\"" << px(kLeft) << "\" y2=\"" << px(sy(fy))
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(fy) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" "
           "font-family=\"sans-serif\">"
        << format_g(fy) << "</text>\n";
  }
  out << "<text x=\"" << px((kLeft + kRight) / 2) << "\" y=\""
      << px(kHeight - 8)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">"
      << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << px((kTop + kBottom) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
      << px((kTop + kBottom) / 2) << ")\">" << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[s].x.size(); ++k) {
      if (!std::isfinite(series[s].x[k]) || !std::isfinite(series[s].y[k]))
        continue;
      if (k) out << ' ';
      out << px(sx(series[s].x[k])) << ',' << px(sy(series[s].y[k]));
    }
    out << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(s);
    out << "<line x1=\"" << px(kRight - 140) << "\" y1=\"" << px(ly)
        << "\" x2=\"" << px(kRight - 120) << "\" y2=\"" << px(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << px(kRight - 114) << "\" y=\"" << px(ly + 4)
        << "\" font-size=\"12\" font-family=\"sans-serif\">"
        << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("svg: cannot open '" + path + "'");
  write_svg_lines(out, title, x_label, y_label, series);
}

}  // namespace gossipdp
