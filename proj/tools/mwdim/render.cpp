#include "mwdim/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mwdim::cli {

std::string render_svg(const julia::RegionSet* regions, const boxcount::PointCloud* cloud,
                       const RenderStyle& style) {
    // Half-width of the square world window.
    double extent = 0.0;
    if (regions) {
        extent = std::max(extent, regions->escape_radius);
        for (const auto& poly : regions->polygons) {
            for (Complex z : poly) extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
        }
    }
    if (cloud) {
        for (Complex z : cloud->points) {
            extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
        }
    }
    if (!(extent > 0.0)) extent = 1.0;

    const double size = style.size_px;
    const double origin = 0.5 * size;
    const double k = (0.5 * size - style.margin_px) / extent;
    auto px = [&](Complex z) {
        std::ostringstream os;
        os.precision(6);
        os << origin + k * z.real() << ',' << origin - k * z.imag();
        return os.str();
    };

    std::ostringstream svg;
    svg.precision(8);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
        << "<desc>transform: X = " << origin << " + " << k << " * re; Y = " << origin << " - " << k
        << " * im</desc>\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (regions) {
        svg << "<g id=\"regions\" fill=\"none\" stroke-width=\"1\">\n";
        if (regions->escape_radius > 0.0) {
            svg << "<circle class=\"escape\" cx=\"" << origin << "\" cy=\"" << origin << "\" r=\""
                << k * regions->escape_radius << "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
        }
        for (std::size_t i = 0; i < regions->polygons.size(); ++i) {
            const auto& poly = regions->polygons[i];
            if (poly.empty()) continue;
            svg << "<polyline class=\"region\" data-label=\""
                << (i < regions->labels.size() ? regions->labels[i] : std::to_string(i))
                << "\" stroke=\"#1f4e9e\" points=\"";
            for (Complex z : poly) svg << px(z) << ' ';
            svg << px(poly.front()) << "\"/>\n";
        }
        svg << "</g>\n";
    }

    if (cloud) {
        const std::size_t n = cloud->points.size();
        const std::size_t stride =
            style.max_points > 0 && n > style.max_points ? (n + style.max_points - 1) / style.max_points : 1;
        svg << "<g id=\"cloud\" fill=\"#b22222\">\n";
        for (std::size_t i = 0; i < n; i += stride) {
            const Complex z = cloud->points[i];
            svg << "<circle cx=\"" << origin + k * z.real() << "\" cy=\"" << origin - k * z.imag()
                << "\" r=\"0.7\"/>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace mwdim::cli
