#include "mwdim/julia_io.hpp"

#include "mwdim/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mwdim::julia {

namespace {

const char* failure_name(FailureKind kind) {
    switch (kind) {
    case FailureKind::none: return "none";
    case FailureKind::validation: return "validation";
    case FailureKind::convergence: return "convergence";
    case FailureKind::geometry: return "geometry";
    case FailureKind::other: return "other";
    }
    return "other";
}

nlohmann::json solver_json(const DimensionResult& r) {
    return {
        {"s", r.s_star},
        {"bracket", {r.lo, r.hi}},
        {"phi_bracket", {r.phi_lo, r.phi_hi}},
        {"evaluations", r.evaluations},
        {"power_iterations", r.total_iterations},
        {"max_residual", r.max_residual},
    };
}

} // namespace

void write_bounds_table(std::ostream& out, const BoundsReport& report) {
    out << "level\tnodes\tedges\ts2\ts1\twidth\tseconds\n";
    const auto old_precision = out.precision(12);
    for (const auto& row : report.levels) {
        out << row.level << '\t' << row.nodes << '\t' << row.edges << '\t' << row.s2 << '\t'
            << row.s1 << '\t' << row.width() << '\t' << row.seconds << '\n';
    }
    out.precision(old_precision);
}

nlohmann::json to_json(const BoundsReport& report) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& row : report.levels) {
        levels.push_back({
            {"level", row.level},
            {"nodes", row.nodes},
            {"edges", row.edges},
            {"s2", row.s2},
            {"s1", row.s1},
            {"width", row.width()},
            {"seconds", row.seconds},
            {"display", outward_bracket(row.s2, row.s1)},
            {"lower_solver", solver_json(row.lower)},
            {"upper_solver", solver_json(row.upper)},
        });
    }
    nlohmann::json doc = {
        {"c", {report.c.real(), report.c.imag()}},
        {"escape_radius", report.escape_radius},
        {"inner_quadrilateral",
         {{"p", report.inner.p}, {"q", report.inner.q}, {"default", report.inner.is_default}}},
        {"samples_per_side", report.geometry.samples_per_side},
        {"slack", report.geometry.slack},
        {"ratio_region", to_string(report.geometry.ratio_region)},
        {"bisection_tol", report.solver.tol},
        {"spectral_tol", report.solver.spectral.tol},
        {"levels", levels},
        {"warnings", report.warnings},
        {"failure", failure_name(report.failure)},
    };
    doc["failed_level"] = report.failed_level ? nlohmann::json(*report.failed_level) : nlohmann::json();
    doc["error"] = report.error.empty() ? nlohmann::json() : nlohmann::json(report.error);
    return doc;
}

RegionSet region_set(const RefinedIFS& ifs) {
    RegionSet set;
    set.c = ifs.map.c();
    set.escape_radius = ifs.map.escape_radius();
    set.level = ifs.level;
    for (const Region& r : ifs.regions) {
        set.labels.push_back(region_label(r, ifs.base));
        set.polygons.push_back(r.boundary);
    }
    return set;
}

nlohmann::json to_json(const RegionSet& regions) {
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < regions.polygons.size(); ++i) {
        nlohmann::json points = nlohmann::json::array();
        for (Complex z : regions.polygons[i]) points.push_back({z.real(), z.imag()});
        list.push_back({{"label", i < regions.labels.size() ? regions.labels[i] : std::to_string(i)},
                        {"points", std::move(points)}});
    }
    return {
        {"c", {regions.c.real(), regions.c.imag()}},
        {"escape_radius", regions.escape_radius},
        {"level", regions.level},
        {"regions", std::move(list)},
    };
}

RegionSet region_set_from_json(const nlohmann::json& doc) {
    try {
        RegionSet set;
        const auto& c = doc.at("c");
        set.c = Complex(c.at(0).get<double>(), c.at(1).get<double>());
        set.escape_radius = doc.at("escape_radius").get<double>();
        set.level = doc.value("level", std::size_t{0});
        for (const auto& region : doc.at("regions")) {
            set.labels.push_back(region.value("label", std::to_string(set.labels.size())));
            std::vector<Complex> polygon;
            for (const auto& p : region.at("points")) {
                polygon.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
            }
            set.polygons.push_back(std::move(polygon));
        }
        return set;
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(0, std::string("malformed region document: ") + err.what());
    }
}

void write_regions_file(const std::filesystem::path& path, const RegionSet& regions) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write region file " + path.string());
    out << to_json(regions).dump() << '\n';
}

RegionSet read_regions_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open region file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(0, path.string() + ": " + err.what());
    }
    return region_set_from_json(doc);
}

std::string outward_bracket(double lo, double hi, int decimals) {
    const double scale = std::pow(10.0, decimals);
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << std::floor(lo * scale) / scale
       << " < dim K < " << std::ceil(hi * scale) / scale;
    return os.str();
}

} // namespace mwdim::julia
