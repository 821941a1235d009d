#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "puiseux/polygon.hpp"

namespace puiseux {

// Standalone 640x480 SVG snapshot of a Newton polygon: axes, the support
// points labelled "(b,a)", the hull chain, and optionally one highlighted
// segment. Coordinates are scaled to fit with a fixed margin.
inline std::string polygon_svg(const std::vector<HullPoint>& points,
                               const std::vector<HullPoint>& chain,
                               const Segment* highlight = nullptr) {
    const double width = 640, height = 480, margin = 48;
    double max_b = 1, max_a = 1;
    for (const HullPoint& p : points) {
        max_b = std::max(max_b, static_cast<double>(p.b));
        max_a = std::max(max_a, p.a.convert_to<double>());
    }
    const double sx = (width - 2 * margin) / max_b;
    const double sy = (height - 2 * margin) / max_a;
    auto X = [&](double b) { return margin + b * sx; };
    auto Y = [&](double a) { return height - margin - a * sy; };
    auto num = [](double v) {
        std::ostringstream os;
        os.setf(std::ios_base::fixed);
        os.precision(2);
        os << v;
        return os.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(max_b))
        << "\" y2=\"" << num(Y(0)) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(0))
        << "\" y2=\"" << num(Y(max_a)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(X(max_b)) << "\" y=\"" << num(Y(0) + 18)
        << "\" font-size=\"12\">b</text>\n";
    svg << "<text x=\"" << num(X(0) - 16) << "\" y=\"" << num(Y(max_a))
        << "\" font-size=\"12\">a</text>\n";
    // hull chain
    if (chain.size() > 1) {
        svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (const HullPoint& p : chain)
            svg << num(X(static_cast<double>(p.b))) << ","
                << num(Y(p.a.convert_to<double>())) << " ";
        svg << "\"/>\n";
    }
    if (highlight) {
        svg << "<line x1=\"" << num(X(static_cast<double>(highlight->start.b))) << "\" y1=\""
            << num(Y(highlight->start.a.convert_to<double>())) << "\" x2=\""
            << num(X(static_cast<double>(highlight->end.b))) << "\" y2=\""
            << num(Y(highlight->end.a.convert_to<double>()))
            << "\" stroke=\"crimson\" stroke-width=\"3\"/>\n";
    }
    // support points with labels
    for (const HullPoint& p : points) {
        double px = X(static_cast<double>(p.b)), py = Y(p.a.convert_to<double>());
        svg << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py)
            << "\" r=\"4\" fill=\"black\"/>\n";
        svg << "<text x=\"" << num(px + 6) << "\" y=\"" << num(py - 6)
            << "\" font-size=\"11\">(" << p.b << "," << rat_str(p.a) << ")</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace puiseux
