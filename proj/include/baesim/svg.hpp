#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "baesim/params.hpp"

namespace baesim {

/// One named curve for the line-plot renderer.
struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

namespace detail {

inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

/// Minimal deterministic SVG line plot. Convenience render only; data
/// contracts bind to the CSV outputs.
inline std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                                 const std::string& ylabel, const std::vector<SvgSeries>& series,
                                 int width = 720, int height = 480) {
    static const char* palette[] = {"#888888", "#2a9d3f", "#7b2d8b", "#1f6fb5", "#d1495b",
                                    "#e9a820"};
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            } else {
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, s.y[i]);
                ymax = std::max(ymax, s.y[i]);
            }
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double pad_y = 0.05 * (ymax - ymin);
    ymin -= pad_y;
    ymax += pad_y;

    const int ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return mt + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";

    // frame and ticks
    svg += "<rect x=\"" + std::to_string(ml) + "\" y=\"" + std::to_string(mt) + "\" width=\"" +
           detail::fmt_g(pw) + "\" height=\"" + detail::fmt_g(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    const int nticks = 5;
    for (int k = 0; k <= nticks; ++k) {
        const double xv = xmin + (xmax - xmin) * k / nticks;
        const double yv = ymin + (ymax - ymin) * k / nticks;
        svg += "<line x1=\"" + detail::fmt_g(px(xv)) + "\" y1=\"" + detail::fmt_g(mt + ph) +
               "\" x2=\"" + detail::fmt_g(px(xv)) + "\" y2=\"" + detail::fmt_g(mt + ph + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::fmt_g(px(xv)) + "\" y=\"" + detail::fmt_g(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt_g(xv) + "</text>\n";
        svg += "<line x1=\"" + detail::fmt_g(ml - 5.0) + "\" y1=\"" + detail::fmt_g(py(yv)) +
               "\" x2=\"" + std::to_string(ml) + "\" y2=\"" + detail::fmt_g(py(yv)) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::fmt_g(ml - 8.0) + "\" y=\"" + detail::fmt_g(py(yv) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt_g(yv) + "</text>\n";
    }
    svg += "<text x=\"" + std::to_string(ml + static_cast<int>(pw) / 2) + "\" y=\"" +
           std::to_string(height - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + xlabel +
           "</text>\n";
    svg += "<text x=\"18\" y=\"" + std::to_string(mt + static_cast<int>(ph) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + std::to_string(mt + static_cast<int>(ph) / 2) +
           ")\">" + ylabel + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette[si % (sizeof palette / sizeof palette[0])];
        std::string pts;
        bool open = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                if (open) { svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                                   "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
                            pts.clear(); open = false; }
                continue;
            }
            pts += detail::fmt_g(px(s.x[i])) + "," + detail::fmt_g(py(s.y[i])) + " ";
            open = true;
        }
        if (open)
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        svg += "<text x=\"" + std::to_string(ml + 10) + "\" y=\"" +
               std::to_string(mt + 18 + 16 * static_cast<int>(si)) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">" +
               s.label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace baesim
