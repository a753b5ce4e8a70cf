// Copyright 2026 The otil Authors.
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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "otil/harness.hpp"
#include "otil/numbers.hpp"

namespace otil {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string render_svg(std::span<const SummaryTable> series,
                       const std::string& title) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min, y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.episode.size(); ++i) {
      if (!std::isfinite(s.mean[i]) || !std::isfinite(s.std[i])) continue;
      x_min = std::min(x_min, s.episode[i]);
      x_max = std::max(x_max, s.episode[i]);
      y_min = std::min(y_min, s.mean[i] - s.std[i]);
      y_max = std::max(y_max, s.mean[i] + s.std[i]);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) {
    const double pad = std::max(1.0, std::abs(y_min) * 0.1);
    y_min -= pad;
    y_max += pad;
  }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double y) {
    return kTop + ph - (y - y_min) / (y_max - y_min) * ph;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << coord(kWidth / 2) << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
      << "</text>\n";

  // Axes and ticks.
  svg << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop + ph)
      << "\" x2=\"" << coord(kLeft + pw) << "\" y2=\"" << coord(kTop + ph)
      << "\"/>\n"
      << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop)
      << "\" x2=\"" << coord(kLeft) << "\" y2=\"" << coord(kTop + ph)
      << "\"/>\n</g>\n<g class=\"ticks\" font-size=\"11\">\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = x_min + (x_max - x_min) * i / kTicks;
    const double yv = y_min + (y_max - y_min) * i / kTicks;
    svg << "<text x=\"" << coord(sx(xv)) << "\" y=\""
        << coord(kTop + ph + 16) << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n"
        << "<text x=\"" << coord(kLeft - 6) << "\" y=\"" << coord(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\""
      << coord(kHeight - 10) << "\" text-anchor=\"middle\" font-size=\"13\">"
      << "episode</text>\n"
      << "<text x=\"16\" y=\"" << coord(kTop + ph / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << coord(kTop + ph / 2) << ")\">moving average true return</text>\n";

  for (std::size_t m = 0; m < series.size(); ++m) {
    const auto& s = series[m];
    const std::string colour = kPalette[m % std::size(kPalette)];
    const std::string name = escape_xml(s.mode);
    std::string upper, lower, line;
    for (std::size_t i = 0; i < s.episode.size(); ++i) {
      if (!std::isfinite(s.mean[i]) || !std::isfinite(s.std[i])) continue;
      const std::string x = coord(sx(s.episode[i]));
      line += x + ',' + coord(sy(s.mean[i])) + ' ';
      upper += x + ',' + coord(sy(s.mean[i] + s.std[i])) + ' ';
    }
    for (std::size_t i = s.episode.size(); i-- > 0;) {
      if (!std::isfinite(s.mean[i]) || !std::isfinite(s.std[i])) continue;
      lower += coord(sx(s.episode[i])) + ',' +
               coord(sy(s.mean[i] - s.std[i])) + ' ';
    }
    svg << "<polygon class=\"band\" data-mode=\"" << name << "\" fill=\""
        << colour << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\""
        << upper << lower << "\"/>\n"
        << "<polyline class=\"mean\" data-mode=\"" << name << "\" fill=\"none\" "
        << "stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"" << line
        << "\"/>\n";
    const double ly = kTop + 16 + 20.0 * static_cast<double>(m);
    svg << "<line x1=\"" << coord(kLeft + pw + 15) << "\" y1=\"" << coord(ly)
        << "\" x2=\"" << coord(kLeft + pw + 40) << "\" y2=\"" << coord(ly)
        << "\" stroke=\"" << colour << "\" stroke-width=\"3\"/>\n"
        << "<text class=\"legend\" x=\"" << coord(kLeft + pw + 46) << "\" y=\""
        << coord(ly + 4) << "\" font-size=\"12\">" << name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace otil
