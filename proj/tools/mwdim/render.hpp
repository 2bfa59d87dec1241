#pragma once

#include "mwdim/boxcount.hpp"
#include "mwdim/julia_io.hpp"

#include <cstddef>
#include <string>

namespace mwdim::cli {

struct RenderStyle {
    double size_px = 800.0;
    double margin_px = 20.0;
    std::size_t max_points = 20000; ///< clouds larger than this are thinned by a fixed stride
};

/// Static SVG: escape circle and region outlines as closed polylines, cloud as dots.
/// World coordinates map by X = ox + k re, Y = oy - k im; the transform is written into
/// the document's <desc> element.
std::string render_svg(const julia::RegionSet* regions, const boxcount::PointCloud* cloud,
                       const RenderStyle& style = {});

} // namespace mwdim::cli
