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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace otoclab::plot {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;  // scatter markers instead of a line
};

struct Axes {
    std::string title;
    std::string xlabel;
    std::string ylabel;
};

// Static SVG line/scatter plot, one polyline or marker set per series.
void write_line_svg(std::ostream& out, const Axes& axes,
                    const std::vector<Series>& series);

// Static SVG heatmap of grid[row][col]; rows map to y in [y0, y1], columns
// to x in [x0, x1].
void write_heatmap_svg(std::ostream& out, const Axes& axes, double x0,
                       double x1, double y0, double y1,
                       const std::vector<std::vector<double>>& grid);

}  // namespace otoclab::plot
