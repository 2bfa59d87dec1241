#pragma once

#include "mwdim/julia.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mwdim::julia {

/// Tab-separated rows: level nodes edges s2 s1 width seconds (header line first).
void write_bounds_table(std::ostream& out, const BoundsReport& report);

nlohmann::json to_json(const BoundsReport& report);

/// Region boundaries of one refinement level, for plotting.
struct RegionSet {
    Complex c;
    double escape_radius = 0.0;
    std::size_t level = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Complex>> polygons;
};

RegionSet region_set(const RefinedIFS& ifs);

nlohmann::json to_json(const RegionSet& regions);

/// Throws ParseError on a malformed document.
RegionSet region_set_from_json(const nlohmann::json& doc);

void write_regions_file(const std::filesystem::path& path, const RegionSet& regions);
RegionSet read_regions_file(const std::filesystem::path& path);

/// Rounds lo down and hi up to `decimals` places: "0.689 < dim K < 3.042".
std::string outward_bracket(double lo, double hi, int decimals = 3);

} // namespace mwdim::julia
