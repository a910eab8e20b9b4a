// Copyright 2026 The otoc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "otoclab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace otoclab::plot {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 140, kMarginT = 40, kMarginB = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

void header(std::ostream& out, const Axes& axes) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-size=\"16\">" << axes.title << "</text>\n"
        << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\""
        << kHeight - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << axes.xlabel << "</text>\n"
        << "<text x=\"18\" y=\"" << (kMarginT + kHeight - kMarginB) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (kMarginT + kHeight - kMarginB) / 2 << ")\">" << axes.ylabel
        << "</text>\n";
}

void axes_ticks(std::ostream& out, const Range& rx, const Range& ry) {
    const double px0 = kMarginL, px1 = kWidth - kMarginR;
    const double py0 = kHeight - kMarginB, py1 = kMarginT;
    out << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\""
        << px1 - px0 << "\" height=\"" << py0 - py1
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
        const double x = px0 + (px1 - px0) * i / 5.0;
        out << "<line x1=\"" << x << "\" y1=\"" << py0 << "\" x2=\"" << x
            << "\" y2=\"" << py0 + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << py0 + 20
            << "\" text-anchor=\"middle\" font-size=\"11\">" << num(fx)
            << "</text>\n";
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
        const double y = py0 - (py0 - py1) * i / 5.0;
        out << "<line x1=\"" << px0 - 5 << "\" y1=\"" << y << "\" x2=\"" << px0
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px0 - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << num(fy)
            << "</text>\n";
    }
}

}  // namespace

void write_line_svg(std::ostream& out, const Axes& axes,
                    const std::vector<Series>& series) {
    Range rx, ry;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("plot series: x/y length mismatch");
        for (double v : s.x) rx.add(v);
        for (double v : s.y) ry.add(v);
    }
    rx.pad();
    ry.pad();
    header(out, axes);
    axes_ticks(out, rx, ry);
    const double px0 = kMarginL, px1 = kWidth - kMarginR;
    const double py0 = kHeight - kMarginB, py1 = kMarginT;
    auto sx = [&](double v) { return px0 + (px1 - px0) * (v - rx.lo) / (rx.hi - rx.lo); };
    auto sy = [&](double v) { return py0 - (py0 - py1) * (v - ry.lo) / (ry.hi - ry.lo); };
    int ci = 0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 8];
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\""
                    << num(sy(s.y[i])) << "\" r=\"3\" fill=\"" << color
                    << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
            out << "\"/>\n";
        }
        const double ly = kMarginT + 18 + 18 * ci;
        out << "<rect x=\"" << px1 + 10 << "\" y=\"" << ly - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << px1 + 28 << "\" y=\"" << ly + 1
            << "\" font-size=\"12\">" << s.label << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

void write_heatmap_svg(std::ostream& out, const Axes& axes, double x0,
                       double x1, double y0, double y1,
                       const std::vector<std::vector<double>>& grid) {
    if (grid.empty() || grid[0].empty())
        throw std::invalid_argument("heatmap: empty grid");
    Range rv;
    for (const auto& row : grid)
        for (double v : row) rv.add(v);
    if (rv.lo > rv.hi) throw std::invalid_argument("heatmap: no finite values");
    if (rv.hi == rv.lo) rv.hi = rv.lo + 1.0;
    header(out, axes);
    Range rx, ry;
    rx.add(x0);
    rx.add(x1);
    ry.add(y0);
    ry.add(y1);
    axes_ticks(out, rx, ry);
    const double px0 = kMarginL, px1 = kWidth - kMarginR;
    const double py0 = kHeight - kMarginB, py1 = kMarginT;
    const std::size_t rows = grid.size(), cols = grid[0].size();
    const double cw = (px1 - px0) / cols, ch = (py0 - py1) / rows;
    for (std::size_t r = 0; r < rows; ++r) {
        if (grid[r].size() != cols)
            throw std::invalid_argument("heatmap: ragged grid");
        for (std::size_t c = 0; c < cols; ++c) {
            const double f = (grid[r][c] - rv.lo) / (rv.hi - rv.lo);
            // viridis-ish two-ramp map: dark blue -> teal -> yellow
            const int red = static_cast<int>(255 * std::pow(f, 1.5));
            const int green = static_cast<int>(40 + 200 * f);
            const int blue = static_cast<int>(90 + 120 * (1.0 - f));
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", red, green, blue);
            out << "<rect x=\"" << num(px0 + c * cw) << "\" y=\""
                << num(py0 - (r + 1) * ch) << "\" width=\"" << num(cw + 0.5)
                << "\" height=\"" << num(ch + 0.5) << "\" fill=\"" << color
                << "\"/>\n";
        }
    }
    out << "<text x=\"" << px1 + 10 << "\" y=\"" << py1 + 10
        << "\" font-size=\"12\">max " << num(rv.hi) << "</text>\n"
        << "<text x=\"" << px1 + 10 << "\" y=\"" << py0
        << "\" font-size=\"12\">min " << num(rv.lo) << "</text>\n"
        << "</svg>\n";
}

}  // namespace otoclab::plot
