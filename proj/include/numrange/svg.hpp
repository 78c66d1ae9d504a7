#pragma once

// Standalone SVG rendering of a numerical range boundary: the sampled
// support polygon, eigenvalue markers, and equal-scale axes in a 600x600
// viewport with a 10% margin.  Pure string assembly, deterministic output.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "matrix_io.hpp"
#include "range.hpp"

namespace numrange {

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace detail

inline std::string range_svg(const RangeBoundary& boundary,
                             const std::vector<Complex>& eigenvalues, const std::string& title) {
    // Bounding box over everything drawn.
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool first = true;
    auto grow = [&](Complex z) {
        if (first) {
            xmin = xmax = z.real();
            ymin = ymax = z.imag();
            first = false;
            return;
        }
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    };
    for (const RangeBoundarySample& s : boundary.samples) grow(s.point);
    grow(boundary.anchor_a);
    grow(boundary.anchor_b);
    for (Complex ev : eigenvalues) grow(ev);

    const double cx = 0.5 * (xmin + xmax);
    const double cy = 0.5 * (ymin + ymax);
    double half = 0.5 * std::max(xmax - xmin, ymax - ymin);
    half *= 1.1;  // 10% margin
    if (!(half > 1e-9)) half = std::max(1.0, std::abs(cx) + std::abs(cy));

    const double s = 270.0 / half;
    auto px = [&](double re) { return 300.0 + (re - cx) * s; };
    auto py = [&](double im) { return 300.0 - (im - cy) * s; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n";
    svg += "  <title>" + detail::xml_escape(title) + "</title>\n";
    svg += "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";

    // Equal-scale axes, drawn only where they cross the viewport.
    const double x0 = px(0.0), y0 = py(0.0);
    if (x0 >= 0.0 && x0 <= 600.0)
        svg += "  <line x1=\"" + format_double(x0) + "\" y1=\"0\" x2=\"" + format_double(x0) +
               "\" y2=\"600\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    if (y0 >= 0.0 && y0 <= 600.0)
        svg += "  <line x1=\"0\" y1=\"" + format_double(y0) + "\" x2=\"600\" y2=\"" +
               format_double(y0) + "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

    if (boundary.shape == RangeShape::point) {
        svg += "  <circle cx=\"" + format_double(px(boundary.anchor_a.real())) + "\" cy=\"" +
               format_double(py(boundary.anchor_a.imag())) +
               "\" r=\"4\" fill=\"#4682b4\"/>\n";
    } else if (boundary.shape == RangeShape::segment) {
        svg += "  <line x1=\"" + format_double(px(boundary.anchor_a.real())) + "\" y1=\"" +
               format_double(py(boundary.anchor_a.imag())) + "\" x2=\"" +
               format_double(px(boundary.anchor_b.real())) + "\" y2=\"" +
               format_double(py(boundary.anchor_b.imag())) +
               "\" stroke=\"#4682b4\" stroke-width=\"2\"/>\n";
    } else {
        svg += "  <polygon points=\"";
        for (std::size_t k = 0; k < boundary.samples.size(); ++k) {
            if (k) svg += ' ';
            svg += format_double(px(boundary.samples[k].point.real())) + "," +
                   format_double(py(boundary.samples[k].point.imag()));
        }
        svg += "\" fill=\"#4682b4\" fill-opacity=\"0.15\" stroke=\"#4682b4\" "
               "stroke-width=\"1.5\"/>\n";
    }

    for (Complex ev : eigenvalues) {
        const std::string x = format_double(px(ev.real()));
        const std::string y = format_double(py(ev.imag()));
        svg += "  <path d=\"M " + x + " " + y + " m -4 0 l 8 0 m -4 -4 l 0 8\" stroke=\"#dc143c\" "
               "stroke-width=\"1.5\" fill=\"none\"/>\n";
    }

    svg += "  <text x=\"300\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
           "text-anchor=\"middle\">" +
           detail::xml_escape(title) + "</text>\n";
    if (boundary.shape != RangeShape::full) {
        svg += "  <text x=\"300\" y=\"44\" font-family=\"sans-serif\" font-size=\"12\" "
               "text-anchor=\"middle\" fill=\"#555555\">degenerate range: ";
        svg += boundary.shape == RangeShape::point ? "single point" : "line segment";
        svg += "</text>\n";
    }
    svg += "  <text x=\"12\" y=\"588\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#555555\">equal-scale axes, half-width " +
           format_double(half) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace numrange
