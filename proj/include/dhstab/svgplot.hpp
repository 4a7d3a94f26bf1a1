#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "dhstab/region.hpp"
#include "dhstab/textio.hpp"

namespace dhstab {

struct PlotSeries {
    std::string label;
    std::vector<cdouble> points;
};

namespace detail {

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct MarkerStyle {
    const char* color;
    const char* shape; // circle, cross, square, triangle, diamond
};

inline const MarkerStyle& marker_style(std::size_t index) {
    static const MarkerStyle styles[] = {
        {"#d62728", "circle"}, {"#1f77b4", "cross"},   {"#2ca02c", "square"},
        {"#9467bd", "triangle"}, {"#ff7f0e", "diamond"},
    };
    return styles[index % 5];
}

inline std::string marker_element(const MarkerStyle& st, double x, double y) {
    const std::string attrs = "class=\"mark\" data-x=\"" + px(x) + "\" data-y=\"" + px(y) + "\"";
    if (st.shape == std::string("circle"))
        return "<circle " + attrs + " cx=\"" + px(x) + "\" cy=\"" + px(y) +
               "\" r=\"4.5\" fill=\"none\" stroke-width=\"1.8\"/>";
    if (st.shape == std::string("cross"))
        return "<path " + attrs + " d=\"M" + px(x - 4.5) + " " + px(y - 4.5) + " L" + px(x + 4.5) +
               " " + px(y + 4.5) + " M" + px(x - 4.5) + " " + px(y + 4.5) + " L" + px(x + 4.5) +
               " " + px(y - 4.5) + "\" fill=\"none\" stroke-width=\"1.8\"/>";
    if (st.shape == std::string("square"))
        return "<rect " + attrs + " x=\"" + px(x - 4.0) + "\" y=\"" + px(y - 4.0) +
               "\" width=\"8\" height=\"8\" fill=\"none\" stroke-width=\"1.8\"/>";
    if (st.shape == std::string("triangle"))
        return "<path " + attrs + " d=\"M" + px(x) + " " + px(y - 5.2) + " L" + px(x + 4.8) + " " +
               px(y + 3.8) + " L" + px(x - 4.8) + " " + px(y + 3.8) +
               " Z\" fill=\"none\" stroke-width=\"1.8\"/>";
    return "<path " + attrs + " d=\"M" + px(x) + " " + px(y - 5.5) + " L" + px(x + 5.5) + " " +
           px(y) + " L" + px(x) + " " + px(y + 5.5) + " L" + px(x - 5.5) + " " + px(y) +
           " Z\" fill=\"none\" stroke-width=\"1.8\"/>";
}

} // namespace detail

/// 800x800 SVG: region raster shading (any cell with a strictly inside
/// corner), axes, one marker series per matrix. The linear world-to-viewport
/// transform is recorded in metadata comments; markers carry their viewport
/// coordinates as data-x/data-y attributes.
inline std::string render_eig_svg(const Raster& raster, const std::vector<PlotSeries>& series,
                                  const Window& w) {
    using detail::px;
    const double view = 800.0;
    const double sx = view / (w.xmax - w.xmin);
    const double sy = view / (w.ymax - w.ymin);
    auto to_px = [&](double x) { return (x - w.xmin) * sx; };
    auto to_py = [&](double y) { return view - (y - w.ymin) * sy; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    svg += "<!-- window xmin " + format_double(w.xmin) + " xmax " + format_double(w.xmax) +
           " ymin " + format_double(w.ymin) + " ymax " + format_double(w.ymax) + " -->\n";
    svg += "<!-- transform px = (x - xmin) * sx, py = 800 - (y - ymin) * sy, sx " +
           format_double(sx) + " sy " + format_double(sy) + " -->\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";

    // region raster: shade a cell when any corner is strictly inside
    svg += "<g id=\"raster\" fill=\"#c6dbef\">\n";
    for (int j = 0; j + 1 < raster.ny; ++j)
        for (int i = 0; i + 1 < raster.nx; ++i) {
            const double m = std::min(std::min(raster.at(i, j), raster.at(i + 1, j)),
                                      std::min(raster.at(i, j + 1), raster.at(i + 1, j + 1)));
            if (m < 0.0) {
                const double x0 = to_px(raster.xs[i]);
                const double y0 = to_py(raster.ys[j + 1]);
                svg += "<rect class=\"cell\" x=\"" + px(x0) + "\" y=\"" + px(y0) + "\" width=\"" +
                       px(to_px(raster.xs[i + 1]) - x0) + "\" height=\"" +
                       px(to_py(raster.ys[j]) - y0) + "\"/>\n";
            }
        }
    svg += "</g>\n";

    // axes and frame
    svg += "<g id=\"axes\" stroke=\"#555555\" stroke-width=\"1\">\n";
    if (w.xmin < 0.0 && w.xmax > 0.0)
        svg += "<line class=\"axis\" x1=\"" + px(to_px(0.0)) + "\" y1=\"0\" x2=\"" +
               px(to_px(0.0)) + "\" y2=\"800\"/>\n";
    if (w.ymin < 0.0 && w.ymax > 0.0)
        svg += "<line class=\"axis\" x1=\"0\" y1=\"" + px(to_py(0.0)) + "\" x2=\"800\" y2=\"" +
               px(to_py(0.0)) + "\"/>\n";
    svg += "<rect x=\"0.5\" y=\"0.5\" width=\"799\" height=\"799\" fill=\"none\"/>\n";
    svg += "</g>\n";
    svg += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#333333\">\n";
    svg += "<text x=\"4\" y=\"796\">" + format_double(w.xmin) + "</text>\n";
    svg += "<text x=\"770\" y=\"796\" text-anchor=\"end\">" + format_double(w.xmax) +
           "</text>\n";
    svg += "<text x=\"4\" y=\"780\">" + format_double(w.ymin) + "</text>\n";
    svg += "<text x=\"4\" y=\"16\">" + format_double(w.ymax) + "</text>\n";
    svg += "</g>\n";

    // one marker series per matrix, with a small legend
    for (std::size_t k = 0; k < series.size(); ++k) {
        const detail::MarkerStyle& st = detail::marker_style(k);
        svg += "<g class=\"series\" data-label=\"" + detail::xml_escape(series[k].label) +
               "\" stroke=\"" + st.color + "\">\n";
        for (cdouble z : series[k].points)
            svg += detail::marker_element(st, to_px(z.real()), to_py(z.imag())) + "\n";
        svg += "</g>\n";
        svg += std::string("<g font-family=\"sans-serif\" font-size=\"14\" stroke=\"") +
               st.color + "\">" +
               detail::marker_element(st, 30.0, 28.0 + 22.0 * static_cast<double>(k)) +
               "<text x=\"44\" y=\"" + px(33.0 + 22.0 * static_cast<double>(k)) +
               "\" stroke=\"none\" fill=\"#333333\">" + detail::xml_escape(series[k].label) +
               "</text></g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

/// Eigenvalue dump: one row per point, series label first.
inline std::string eigs_csv(const std::vector<PlotSeries>& series) {
    std::string out = "series,re,im\n";
    for (const PlotSeries& s : series)
        for (cdouble z : s.points)
            out += s.label + "," + format_double(z.real()) + "," + format_double(z.imag()) + "\n";
    return out;
}

/// Margin samples: one row per raster node.
inline std::string raster_csv(const Raster& r) {
    std::string out = "x,y,margin\n";
    for (int j = 0; j < r.ny; ++j)
        for (int i = 0; i < r.nx; ++i)
            out += format_double(r.xs[i]) + "," + format_double(r.ys[j]) + "," +
                   format_double(r.at(i, j)) + "\n";
    return out;
}

} // namespace dhstab
