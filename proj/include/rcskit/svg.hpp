// rcskit — radar cross section modeling and sensing-channel simulation
// Copyright (C) 2026 rcskit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Tiny deterministic SVG emitter for CDF curves and polar beam patterns.
// Pure file output, fixed-precision coordinates.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rcskit/errors.hpp"
#include "rcskit/units.hpp"

namespace rcskit {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline const char* series_color(std::size_t i)
{
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    return colors[i % 5];
}

inline std::string fmt2(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

} // namespace detail

/// Cartesian line plot (used for CDF curves).
inline void write_line_plot_svg(const std::string& path, const std::string& title,
                                const std::string& x_label, const std::string& y_label,
                                const std::vector<PlotSeries>& series)
{
    if (series.empty())
        throw std::domain_error("write_line_plot_svg: no series");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin)
        xmax = xmin + 1.0;
    if (ymax <= ymin)
        ymax = ymin + 1.0;

    const double w = 640, h = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    // Axes and gridlines.
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        out << "<line x1=\"" << detail::fmt2(px(xv)) << "\" y1=\"" << py(ymin) << "\" x2=\""
            << detail::fmt2(px(xv)) << "\" y2=\"" << py(ymax)
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<line x1=\"" << px(xmin) << "\" y1=\"" << detail::fmt2(py(yv)) << "\" x2=\""
            << px(xmax) << "\" y2=\"" << detail::fmt2(py(yv)) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << detail::fmt2(px(xv)) << "\" y=\"" << h - mb + 18
            << "\" text-anchor=\"middle\">" << detail::fmt2(xv) << "</text>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << detail::fmt2(py(yv) + 4)
            << "\" text-anchor=\"end\">" << detail::fmt2(yv) << "</text>\n";
    }
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">"
        << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << h / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        out << "<polyline fill=\"none\" stroke=\"" << detail::series_color(si)
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[si].points)
            out << detail::fmt2(px(x)) << ',' << detail::fmt2(py(y)) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 * double(si + 1) << "\" fill=\""
            << detail::series_color(si) << "\">" << series[si].name << "</text>\n";
    }
    out << "</svg>\n";
}

/// Polar plot of a dB-valued azimuth function (beam patterns).
inline void write_polar_plot_svg(const std::string& path, const std::string& title,
                                 const std::vector<std::pair<double, double>>& phi_db_points,
                                 double db_floor = -20.0)
{
    if (phi_db_points.empty())
        throw std::domain_error("write_polar_plot_svg: no points");
    double db_max = db_floor;
    for (const auto& [phi, db] : phi_db_points)
        db_max = std::max(db_max, db);
    db_max = std::ceil(db_max / 5.0) * 5.0 + 5.0;

    const double size = 480, cx = size / 2, cy = size / 2 + 10, radius = size / 2 - 50;
    auto to_xy = [&](double phi_deg, double db) {
        const double r = std::clamp((db - db_floor) / (db_max - db_floor), 0.0, 1.0) * radius;
        // 0 deg points up, angles clockwise (compass convention).
        const double a = deg_to_rad(90.0 - phi_deg);
        return std::pair<double, double>{cx + r * std::cos(a), cy - r * std::sin(a)};
    };

    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
        << size + 20 << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << cx << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    for (int ring = 1; ring <= 4; ++ring) {
        const double rr = radius * ring / 4.0;
        out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << detail::fmt2(rr)
            << "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << cx + 4 << "\" y=\"" << detail::fmt2(cy - rr - 2) << "\">"
            << detail::fmt2(db_floor + (db_max - db_floor) * ring / 4.0) << " dB</text>\n";
    }
    for (int spoke = 0; spoke < 12; ++spoke) {
        const auto [x, y] = to_xy(spoke * 30.0, db_max);
        out << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << detail::fmt2(x)
            << "\" y2=\"" << detail::fmt2(y) << "\" stroke=\"#eeeeee\"/>\n";
        const auto [lx, ly] = to_xy(spoke * 30.0, db_max + (db_max - db_floor) * 0.06);
        out << "<text x=\"" << detail::fmt2(lx) << "\" y=\"" << detail::fmt2(ly)
            << "\" text-anchor=\"middle\">" << spoke * 30 << "&#176;</text>\n";
    }
    out << "<polygon fill=\"#1f77b422\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& [phi, db] : phi_db_points) {
        const auto [x, y] = to_xy(phi, db);
        out << detail::fmt2(x) << ',' << detail::fmt2(y) << ' ';
    }
    out << "\"/>\n</svg>\n";
}

} // namespace rcskit
