// Copyright 2026 The featgan Authors
// SPDX-License-Identifier: Apache-2.0
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

#include "featgan/analysis/scatter.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "featgan/io/format_error.hpp"

namespace featgan::analysis {

std::string scatter_table(std::span<const ScatterPoint> points) {
  std::ostringstream os;
  os << "x\ty\tdomain\tlabel\n";
  char buf[96];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.6f\t%.6f\t", p.x, p.y);
    os << buf << io::to_string(p.domain) << '\t' << p.label << '\n';
  }
  return os.str();
}

std::string scatter_svg(std::span<const ScatterPoint> points, const std::string& title) {
  constexpr double kSize = 480.0, kPad = 40.0;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!points.empty()) {
    x0 = x1 = points[0].x;
    y0 = y1 = points[0].y;
    for (const auto& p : points) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  if (x1 - x0 <= 0) x1 = x0 + 1;
  if (y1 - y0 <= 0) y1 = y0 + 1;
  const double span = kSize - 2 * kPad;
  std::ostringstream os;
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                kSize, kSize, kSize, kSize);
  os << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" stroke=\"black\"/>\n", kPad,
                kPad, span, span);
  os << buf;
  std::string safe_title;
  for (char c : title) {
    if (c == '<') safe_title += "&lt;";
    else if (c == '>') safe_title += "&gt;";
    else if (c == '&') safe_title += "&amp;";
    else safe_title += c;
  }
  os << "<text x=\"" << kPad << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << safe_title
     << "</text>\n";
  for (const auto& p : points) {
    const double cx = kPad + (p.x - x0) / (x1 - x0) * span;
    const double cy = kSize - kPad - (p.y - y0) / (y1 - y0) * span;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"%s\" fill-opacity=\"0.6\"/>\n", cx,
                  cy, p.domain == io::Domain::kReal ? "#1f77b4" : "#ff7f0e");
    os << buf;
  }
  os << "<circle cx=\"360\" cy=\"20\" r=\"4\" fill=\"#1f77b4\"/>"
        "<text x=\"368\" y=\"24\" font-family=\"sans-serif\" font-size=\"12\">real</text>\n"
        "<circle cx=\"410\" cy=\"20\" r=\"4\" fill=\"#ff7f0e\"/>"
        "<text x=\"418\" y=\"24\" font-family=\"sans-serif\" font-size=\"12\">synthetic</text>\n"
        "</svg>\n";
  return os.str();
}

void scatter_emit(std::span<const ScatterPoint> points, const std::string& prefix, const std::string& title) {
  for (const auto& [ext, body] :
       {std::pair{".table", scatter_table(points)}, std::pair{".svg", scatter_svg(points, title)}}) {
    std::ofstream out(prefix + ext, std::ios::trunc);
    out << body;
    if (!out) {
      throw io::FormatError(io::FormatErrorKind::kIo, "cannot write " + prefix + ext);
    }
  }
}

}  // namespace featgan::analysis
