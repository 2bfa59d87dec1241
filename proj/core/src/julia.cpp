#include "mwdim/julia.hpp"

#include "mwdim/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mwdim::julia {

double QuadraticMap::escape_radius() const noexcept {
    return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * std::abs(c_)));
}

std::pair<Complex, Complex> inverse_branches(Complex w, const QuadraticMap& map) {
    const Complex shifted = w - map.c();
    if (shifted == Complex{0.0, 0.0}) {
        throw GeometryError("inverse branches are undefined at the critical value");
    }
    const Complex root = std::sqrt(shifted);
    return {root, -root};
}

namespace {

Complex bisector(VertexId quadrant) {
    using std::numbers::pi;
    return std::polar(1.0, pi / 4.0 + static_cast<double>(quadrant) * pi / 2.0);
}

std::string format_point(Complex z) {
    std::ostringstream os;
    os.precision(12);
    os << '(' << z.real() << ", " << z.imag() << ')';
    return os.str();
}

const char* const quadrant_names[] = {"A", "B", "C", "D"};

} // namespace

Complex quadrant_branch(Complex w, const QuadraticMap& map, VertexId quadrant) {
    const Complex root = std::sqrt(w - map.c());
    const Complex d = bisector(quadrant);
    return (root * std::conj(d)).real() >= 0.0 ? root : -root;
}

MWGraph quadrant_graph(std::span<const double> upper, std::span<const double> lower) {
    static constexpr std::array<std::pair<VertexId, VertexId>, 8> arcs{{
        {quadrant_a, quadrant_a}, {quadrant_a, quadrant_b},
        {quadrant_b, quadrant_c}, {quadrant_b, quadrant_d},
        {quadrant_c, quadrant_a}, {quadrant_c, quadrant_b},
        {quadrant_d, quadrant_c}, {quadrant_d, quadrant_d},
    }};
    if (upper.size() != arcs.size() || (!lower.empty() && lower.size() != arcs.size())) {
        throw std::invalid_argument("quadrant graph needs eight ratios");
    }
    std::vector<EdgeSpec> edges;
    for (std::size_t e = 0; e < arcs.size(); ++e) {
        EdgeSpec spec{arcs[e].first, arcs[e].second, upper[e], std::nullopt};
        if (!lower.empty()) spec.lower_ratio = lower[e];
        edges.push_back(spec);
    }
    return MWGraph(4, edges, {"A", "B", "C", "D"});
}

std::string region_label(const Region& region, const MWGraph& base) {
    std::string label = base.label(region.root);
    for (EdgeId e : region.path) label += base.label(base.target(e));
    return label;
}

// --- planar geometry -----------------------------------------------------------

namespace {

double segment_distance(Complex a, Complex b, Complex p) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * d - p);
}

} // namespace

double max_spacing(std::span<const Complex> polygon) {
    double best = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        best = std::max(best, std::abs(polygon[(i + 1) % polygon.size()] - polygon[i]));
    }
    return best;
}

double distance_to_boundary(std::span<const Complex> polygon, Complex point) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        best = std::min(best, segment_distance(polygon[i], polygon[(i + 1) % polygon.size()], point));
    }
    return best;
}

bool polygon_contains(std::span<const Complex> polygon, Complex point, double tolerance) {
    if (polygon.empty()) return false;
    if (distance_to_boundary(polygon, point) <= tolerance) return true;
    bool inside = false;
    const double x = point.real();
    const double y = point.imag();
    for (std::size_t i = 0, j = polygon.size() - 1; i < polygon.size(); j = i++) {
        const double xi = polygon[i].real(), yi = polygon[i].imag();
        const double xj = polygon[j].real(), yj = polygon[j].imag();
        if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) inside = !inside;
    }
    return inside;
}

ModulusBounds modulus_bounds(const Region& region, double slack) {
    if (region.boundary.empty()) throw GeometryError("region has no boundary samples");
    if (polygon_contains(region.boundary, Complex{0.0, 0.0}, 0.0)) {
        throw GeometryError("region contains the origin");
    }
    const double spacing = max_spacing(region.boundary);
    const double scale = region.reference_spacing > 0.0
                             ? std::min(1.0, spacing / region.reference_spacing)
                             : 1.0;
    ModulusBounds b;
    b.slack = slack * scale;
    double sup = 0.0;
    for (Complex z : region.boundary) sup = std::max(sup, std::abs(z));
    b.m = distance_to_boundary(region.boundary, Complex{0.0, 0.0}) - b.slack;
    b.M = sup + b.slack;
    if (!(b.m > 0.0)) {
        throw GeometryError("region comes within slack of the origin (m = " +
                            std::to_string(b.m) + ")");
    }
    return b;
}

RatioBounds derivative_ratio_bounds(const Region& region, double slack) {
    RatioBounds r;
    r.modulus = modulus_bounds(region, slack);
    r.lower = 1.0 / (2.0 * r.modulus.M);
    r.upper = 1.0 / (2.0 * r.modulus.m);
    return r;
}

const char* to_string(RatioRegion mode) {
    return mode == RatioRegion::containing ? "containing" : "image";
}

// --- level-0 partition -----------------------------------------------------------

std::array<Region, 4> quadrant_regions(const QuadraticMap& map, InnerQuadrilateral inner,
                                       std::size_t samples_per_side) {
    const std::size_t n = samples_per_side;
    if (n < 2) throw std::invalid_argument("need at least two samples per side");
    const double radius = map.escape_radius();
    const double p = inner.p;
    const double q = inner.q;
    if (!(p > 0.0 && p <= radius && q > 0.0 && q < radius)) {
        throw GeometryError("inner quadrilateral must satisfy 0 < p <= R and 0 < q < R");
    }

    // First-quadrant boundary, counterclockwise from (R, 0).
    std::vector<Complex> first;
    for (std::size_t j = 0; j <= n; ++j) {
        if (j == 0) {
            first.emplace_back(radius, 0.0);
        } else if (j == n) {
            first.emplace_back(0.0, radius);
        } else {
            first.push_back(std::polar(radius, std::numbers::pi / 2.0 * static_cast<double>(j) /
                                                   static_cast<double>(n)));
        }
    }
    for (std::size_t j = 1; j <= n; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(n);
        first.emplace_back(0.0, radius + (q - radius) * t);
    }
    const bool touches = p == radius;
    for (std::size_t j = 1; j < n + (touches ? 0 : 1); ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(n);
        first.emplace_back(p * t, q * (1.0 - t));
    }
    if (!touches) {
        for (std::size_t j = 1; j < n; ++j) {
            const double t = static_cast<double>(j) / static_cast<double>(n);
            first.emplace_back(p + (radius - p) * t, 0.0);
        }
    }

    std::array<Region, 4> regions;
    for (VertexId v = 0; v < 4; ++v) {
        Region& r = regions[v];
        r.root = r.terminal = v;
        r.boundary.reserve(first.size());
        for (Complex z : first) {
            switch (v) {
            case quadrant_a: r.boundary.push_back(z); break;
            case quadrant_b: r.boundary.push_back(-std::conj(z)); break;
            case quadrant_c: r.boundary.push_back(-z); break;
            default: r.boundary.push_back(std::conj(z)); break;
            }
        }
        r.reference_spacing = max_spacing(r.boundary);
    }
    return regions;
}

bool quadrant_region_contains(const QuadraticMap& map, InnerQuadrilateral inner, VertexId quadrant,
                              Complex w, double tolerance) {
    // Fold into the first quadrant with the same symmetries that built the regions.
    Complex z = w;
    switch (quadrant) {
    case quadrant_a: break;
    case quadrant_b: z = -std::conj(w); break;
    case quadrant_c: z = -w; break;
    default: z = std::conj(w); break;
    }
    const double x = z.real();
    const double y = z.imag();
    if (x < -tolerance || y < -tolerance) return false;
    if (std::abs(z) > map.escape_radius() + tolerance) return false;
    // Signed distance to the line x/p + y/q = 1, positive away from the origin.
    const double norm = std::hypot(1.0 / inner.p, 1.0 / inner.q);
    return (x / inner.p + y / inner.q - 1.0) / norm >= -tolerance;
}

std::optional<std::string> check_containment(const QuadraticMap& map, InnerQuadrilateral inner,
                                             const std::array<Region, 4>& regions,
                                             double tolerance) {
    const MWGraph base = quadrant_graph(std::vector<double>(8, 0.5), {});
    for (EdgeId e = 0; e < base.edge_count(); ++e) {
        const VertexId u = base.source(e);
        const VertexId v = base.target(e);
        for (Complex z : regions[v].boundary) {
            if (z == map.c()) {
                return std::string("region ") + quadrant_names[v] + " contains the critical value " +
                       format_point(z);
            }
            const Complex w = quadrant_branch(z, map, u);
            if (!quadrant_region_contains(map, inner, u, w, tolerance)) {
                return std::string("image of region ") + quadrant_names[v] + " under the branch into " +
                       quadrant_names[u] + " leaves " + quadrant_names[u] + ": sample " +
                       format_point(z) + " maps to " + format_point(w);
            }
        }
    }
    return std::nullopt;
}

namespace {

std::optional<std::string> check_candidate(const QuadraticMap& map, InnerQuadrilateral inner,
                                           const std::array<Region, 4>& regions,
                                           const GeometryOptions& options) {
    for (VertexId v = 0; v < 4; ++v) {
        try {
            const auto b = modulus_bounds(regions[v], options.slack);
            if (!(b.m > 0.5)) {
                return std::string("region ") + quadrant_names[v] + " has m = " + std::to_string(b.m) +
                       " <= 1/2, so its branch does not contract";
            }
        } catch (const GeometryError& err) {
            return std::string("region ") + quadrant_names[v] + ": " + err.what();
        }
    }
    return check_containment(map, inner, regions, std::max(options.slack, 1e-12));
}

std::string path_key(VertexId root, std::span<const EdgeId> path) {
    std::string key(1, static_cast<char>(root));
    for (EdgeId e : path) key.push_back(static_cast<char>(e));
    return key;
}

struct Assembled {
    MWGraph graph;
    std::vector<EdgeId> branch;
};

Assembled assemble(const std::vector<Region>& regions, const QuadraticMap& map, const MWGraph& base,
                   const GeometryOptions& options) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(regions.size());
    for (std::size_t i = 0; i < regions.size(); ++i) {
        index.emplace(path_key(regions[i].root, regions[i].path), i);
    }

    std::vector<EdgeSpec> edges;
    std::vector<EdgeId> branch;
    std::vector<std::string> labels;
    edges.reserve(2 * regions.size());
    labels.reserve(regions.size());

    for (std::size_t i = 0; i < regions.size(); ++i) {
        const Region& alpha = regions[i];
        labels.push_back(region_label(alpha, base));
        std::optional<RatioBounds> own;
        if (options.ratio_region == RatioRegion::containing) {
            own = derivative_ratio_bounds(alpha, options.slack);
        }
        for (EdgeId next : base.out_edges(alpha.terminal)) {
            std::vector<EdgeId> full = alpha.path;
            full.push_back(next);
            const EdgeId first = full.front();
            const std::span<const EdgeId> tail(full.begin() + 1, full.end());
            const VertexId beta_root = tail.empty() ? base.target(next) : base.source(tail.front());
            const auto it = index.find(path_key(beta_root, tail));
            if (it == index.end()) throw GeometryError("refined graph is missing a shifted path");
            const Region& beta = regions[it->second];

            RatioBounds bounds;
            if (own) {
                bounds = *own;
            } else {
                Region image;
                image.root = alpha.root;
                image.terminal = beta.terminal;
                image.reference_spacing = beta.reference_spacing;
                image.boundary.reserve(beta.boundary.size());
                for (Complex z : beta.boundary) {
                    image.boundary.push_back(quadrant_branch(z, map, alpha.root));
                }
                bounds = derivative_ratio_bounds(image, options.slack);
            }
            if (!(bounds.lower > 0.0 && bounds.lower <= bounds.upper && bounds.upper < 1.0)) {
                throw GeometryError("edge out of region " + labels.back() + " has ratio bounds [" +
                                    std::to_string(bounds.lower) + ", " + std::to_string(bounds.upper) +
                                    "] outside (0, 1)");
            }
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(it->second),
                             bounds.upper, bounds.lower});
            branch.push_back(first);
        }
    }
    return {MWGraph(regions.size(), edges, std::move(labels)), std::move(branch)};
}

} // namespace

InitialPartition build_initial_regions(const QuadraticMap& map, const GeometryOptions& options) {
    const double radius = map.escape_radius();
    std::vector<InnerQuadrilateral> candidates;
    const double default_q = std::sqrt(std::abs(map.c()));
    if (default_q > 0.0 && default_q < radius) candidates.push_back({radius, default_q, true});
    for (double pf : {1.0, 0.95, 0.9, 0.85, 0.8, 0.75}) {
        for (int qi = 19; qi >= 1; --qi) {
            candidates.push_back({pf * radius, 0.05 * qi * radius, false});
        }
    }

    std::string first_failure;
    for (const auto& inner : candidates) {
        auto regions = quadrant_regions(map, inner, options.samples_per_side);
        const auto failure = check_candidate(map, inner, regions, options);
        if (!failure) {
            InitialPartition partition{map, inner, std::move(regions), MWGraph{}};
            std::vector<Region> level0(partition.regions.begin(), partition.regions.end());
            const MWGraph base = quadrant_graph(std::vector<double>(8, 0.5), {});
            partition.base_graph = assemble(level0, map, base, options).graph;
            return partition;
        }
        if (first_failure.empty()) {
            std::ostringstream os;
            os.precision(12);
            os << "p = " << inner.p << ", q = " << inner.q << ": " << *failure;
            first_failure = os.str();
        }
    }
    std::ostringstream os;
    os << "no inner quadrilateral passes the containment check for c = " << format_point(map.c())
       << " (escape radius " << radius << "); first candidate " << first_failure;
    throw GeometryError(os.str());
}

RefinedIFS initial_ifs(const InitialPartition& partition, const GeometryOptions& options) {
    RefinedIFS ifs;
    ifs.level = 0;
    ifs.map = partition.map;
    ifs.base = quadrant_graph(std::vector<double>(8, 0.5), {});
    ifs.options = options;
    ifs.regions.assign(partition.regions.begin(), partition.regions.end());
    auto assembled = assemble(ifs.regions, ifs.map, ifs.base, options);
    ifs.graph = std::move(assembled.graph);
    ifs.edge_branch = std::move(assembled.branch);
    return ifs;
}

RefinedIFS refine(const RefinedIFS& ifs) {
    RefinedIFS next;
    next.level = ifs.level + 1;
    next.map = ifs.map;
    next.base = ifs.base;
    next.options = ifs.options;
    next.regions.reserve(2 * ifs.regions.size());
    for (EdgeId e = 0; e < ifs.base.edge_count(); ++e) {
        const VertexId u = ifs.base.source(e);
        const VertexId v = ifs.base.target(e);
        for (const Region& alpha : ifs.regions) {
            if (alpha.root != v) continue;
            Region r;
            r.path.reserve(alpha.path.size() + 1);
            r.path.push_back(e);
            r.path.insert(r.path.end(), alpha.path.begin(), alpha.path.end());
            r.root = u;
            r.terminal = alpha.terminal;
            r.reference_spacing = alpha.reference_spacing;
            r.boundary.reserve(alpha.boundary.size());
            for (Complex z : alpha.boundary) r.boundary.push_back(quadrant_branch(z, ifs.map, u));
            next.regions.push_back(std::move(r));
        }
    }
    auto assembled = assemble(next.regions, next.map, next.base, next.options);
    next.graph = std::move(assembled.graph);
    next.edge_branch = std::move(assembled.branch);
    return next;
}

// --- pipeline ------------------------------------------------------------------------

BoundsReport bounds_pipeline(const QuadraticMap& map, const PipelineOptions& options,
                             const std::function<void(const RefinedIFS&)>& on_level) {
    BoundsReport report;
    report.c = map.c();
    report.escape_radius = map.escape_radius();
    report.geometry = options.geometry;
    report.solver = options.solver;

    const InitialPartition partition = build_initial_regions(map, options.geometry);
    report.inner = partition.inner;

    std::optional<RefinedIFS> ifs;
    for (std::size_t level = 0; level <= options.max_level; ++level) {
        const auto start = std::chrono::steady_clock::now();
        try {
            ifs = level == 0 ? initial_ifs(partition, options.geometry) : refine(*ifs);
            if (on_level) on_level(*ifs);

            LevelReport row;
            row.level = level;
            row.nodes = ifs->graph.vertex_count();
            row.edges = ifs->graph.edge_count();
            row.lower = solve_dimension(ifs->graph, RatioKind::lower, options.solver);
            row.upper = solve_dimension(ifs->graph, RatioKind::upper, options.solver);
            row.s2 = row.lower.s_star;
            row.s1 = row.upper.s_star;
            row.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            if (row.s2 > row.s1) {
                report.warnings.push_back("level " + std::to_string(level) +
                                          ": lower bound exceeds upper bound");
            }
            if (!report.levels.empty()) {
                const LevelReport& prev = report.levels.back();
                if (row.s2 < prev.s2 || row.s1 > prev.s1) {
                    report.warnings.push_back("level " + std::to_string(level) +
                                              ": bracket is not nested in the previous level's");
                }
            }
            report.levels.push_back(std::move(row));
        } catch (const GeometryError& err) {
            report.failure = FailureKind::geometry;
            report.error = err.what();
        } catch (const ConvergenceError& err) {
            report.failure = FailureKind::convergence;
            report.error = err.what();
        } catch (const ValidationError& err) {
            report.failure = FailureKind::validation;
            report.error = err.what();
        } catch (const std::exception& err) {
            report.failure = FailureKind::other;
            report.error = err.what();
        }
        if (!report.ok()) {
            report.failed_level = level;
            break;
        }
    }
    return report;
}

} // namespace mwdim::julia
