#pragma once

#include "braid.hpp"
#include "diagram.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

namespace l11 {

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Every integer translate of the lift that meets the unit square, as SVG paths in a size x size box.
inline void curve_paths(std::ostringstream& os, const Curve& c, double size, const char* colour, const char* extra) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (auto& p : c.pts) {
        x0 = std::min(x0, p.x.get_d()), x1 = std::max(x1, p.x.get_d());
        y0 = std::min(y0, p.y.get_d()), y1 = std::max(y1, p.y.get_d());
    }
    for (long vx = long(std::ceil(-x1)) - 1; vx <= long(std::floor(1 - x0)) + 1; ++vx)
        for (long vy = long(std::ceil(-y1)) - 1; vy <= long(std::floor(1 - y0)) + 1; ++vy) {
            if (x1 + vx < 0 || x0 + vx > 1 || y1 + vy < 0 || y0 + vy > 1) continue;
            os << "<path d=\"";
            for (std::size_t i = 0; i < c.pts.size(); ++i) {
                double x = (c.pts[i].x.get_d() + vx) * size, y = (1 - (c.pts[i].y.get_d() + vy)) * size;
                os << (i ? " L" : "M") << num(x) << ' ' << num(y);
            }
            os << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"" << extra << "/>\n";
        }
}

inline void basepoint(std::ostringstream& os, const QPt& p, double size, const char* name, const char* fill) {
    double x = (p.x.get_d() - std::floor(p.x.get_d())) * size;
    double y = (1 - (p.y.get_d() - std::floor(p.y.get_d()))) * size;
    os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"" << fill
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6) << "\" font-size=\"14\" font-family=\"sans-serif\">"
       << name << "</text>\n";
}

}  // namespace detail

// Torus as the unit square with opposite sides identified: alpha red, beta blue, optional extra curve green.
inline std::string render_svg(const CurveDiagram& d, const std::optional<Curve>& extra = std::nullopt,
                              double size = 480) {
    std::ostringstream os;
    const double m = 20;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::num(size + 2 * m) << "\" height=\""
       << detail::num(size + 2 * m) << "\">\n";
    os << "<defs><clipPath id=\"torus\"><rect x=\"0\" y=\"0\" width=\"" << detail::num(size) << "\" height=\""
       << detail::num(size) << "\"/></clipPath></defs>\n";
    os << "<g transform=\"translate(" << detail::num(m) << ' ' << detail::num(m) << ")\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << detail::num(size) << "\" height=\"" << detail::num(size)
       << "\" fill=\"white\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    os << "<g clip-path=\"url(#torus)\">\n";
    detail::curve_paths(os, d.alpha, size, "red", "");
    detail::curve_paths(os, d.beta, size, "blue", "");
    if (extra) detail::curve_paths(os, *extra, size, "green", " stroke-dasharray=\"6 3\"");
    os << "</g>\n";
    detail::basepoint(os, d.w, size, "w", "black");
    detail::basepoint(os, d.z, size, "z", "white");
    os << "</g>\n</svg>\n";
    return os.str();
}

// Strands drawn top to bottom, one crossing per row.
inline std::string render_braid_svg(const BraidWord& w) {
    const double dx = 30, dy = 24, m = 20;
    const double width = (w.strands - 1) * dx + 2 * m, height = double(w.letters.size()) * dy + 2 * m;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::num(width) << "\" height=\""
       << detail::num(height) << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n";
    auto X = [&](int s) { return m + (s - 1) * dx; };
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
        const auto [i, sign] = w.letters[k];
        const double y0 = m + double(k) * dy, y1 = y0 + dy, ym = (y0 + y1) / 2;
        for (int s = 1; s <= w.strands; ++s)
            if (s != i && s != i + 1)
                os << "<path d=\"M" << detail::num(X(s)) << ' ' << detail::num(y0) << " L" << detail::num(X(s)) << ' '
                   << detail::num(y1) << "\"/>\n";
        // over strand drawn whole, under strand broken at the middle
        const int over_from = sign > 0 ? i + 1 : i, under_from = sign > 0 ? i : i + 1;
        const int over_to = over_from == i ? i + 1 : i, under_to = under_from == i ? i + 1 : i;
        os << "<path d=\"M" << detail::num(X(over_from)) << ' ' << detail::num(y0) << " L" << detail::num(X(over_to))
           << ' ' << detail::num(y1) << "\"/>\n";
        const double xm = (X(under_from) + X(under_to)) / 2, gap = 5 * (X(under_to) > X(under_from) ? 1 : -1);
        os << "<path d=\"M" << detail::num(X(under_from)) << ' ' << detail::num(y0) << " L" << detail::num(xm - gap)
           << ' ' << detail::num(ym - 4) << " M" << detail::num(xm + gap) << ' ' << detail::num(ym + 4) << " L"
           << detail::num(X(under_to)) << ' ' << detail::num(y1) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace l11
