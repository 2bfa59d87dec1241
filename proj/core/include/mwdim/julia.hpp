#pragma once

#include "mwdim/graph.hpp"
#include "mwdim/spectral.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mwdim {

using Complex = std::complex<double>;

namespace julia {

/// z -> z^2 + c.
class QuadraticMap {
public:
    explicit QuadraticMap(Complex c = {-0.5, 0.0}) : c_(c) {}

    Complex c() const noexcept { return c_; }

    /// R = (1 + sqrt(1 + 4|c|)) / 2, the positive solution of R^2 - |c| = R.
    /// The Julia set lies in |z| <= R, and both inverse branches map that disk into itself.
    double escape_radius() const noexcept;

    Complex operator()(Complex z) const noexcept { return z * z + c_; }

private:
    Complex c_;
};

/// The two preimages of w: (principal sqrt(w - c), its negation).
/// Throws GeometryError at the critical value w = c.
std::pair<Complex, Complex> inverse_branches(Complex w, const QuadraticMap& map);

// Base quadrant vertices: A = first quadrant, B = second, C = third, D = fourth.
inline constexpr VertexId quadrant_a = 0;
inline constexpr VertexId quadrant_b = 1;
inline constexpr VertexId quadrant_c = 2;
inline constexpr VertexId quadrant_d = 3;

/// The preimage of w lying in the closed half-plane centred on `quadrant`'s bisector.
Complex quadrant_branch(Complex w, const QuadraticMap& map, VertexId quadrant);

/// The four-vertex, eight-edge quadrant graph A->{A,B}, B->{C,D}, C->{A,B}, D->{C,D},
/// edges numbered in that order, with the given per-edge ratios.
MWGraph quadrant_graph(std::span<const double> upper, std::span<const double> lower);

/// A planar region identified by a path in the quadrant graph, represented by samples
/// of its boundary (a closed polygon; the last point connects back to the first).
struct Region {
    std::vector<EdgeId> path;      ///< base-graph edges, outermost branch first
    VertexId root = 0;             ///< quadrant containing the region (source of path)
    VertexId terminal = 0;         ///< base region the samples were pushed from (target of path)
    std::vector<Complex> boundary;
    double reference_spacing = 0.0; ///< max sample spacing of the level-0 ancestor
};

/// Vertex-sequence label, e.g. "A" at level 0 or "ABD" for the path A->B->D.
std::string region_label(const Region& region, const MWGraph& base);

double max_spacing(std::span<const Complex> polygon);

/// Distance from `point` to the closed polygon's edges.
double distance_to_boundary(std::span<const Complex> polygon, Complex point);

/// Crossing-number test; points within `tolerance` of an edge count as inside.
bool polygon_contains(std::span<const Complex> polygon, Complex point, double tolerance);

struct ModulusBounds {
    double m = 0.0;     ///< inf |z| over the region, minus slack
    double M = 0.0;     ///< sup |z| over the region, plus slack
    double slack = 0.0; ///< slack actually applied
};

/// m is the distance from 0 to the boundary polygon (the origin must lie outside), M the
/// largest sample modulus. `slack` is scaled by the ratio of the region's sample spacing
/// to its level-0 ancestor's spacing. Throws GeometryError when m - slack <= 0.
ModulusBounds modulus_bounds(const Region& region, double slack);

struct RatioBounds {
    double lower = 0.0; ///< 1 / (2M)
    double upper = 0.0; ///< 1 / (2m)
    ModulusBounds modulus;
};

/// Lipschitz bounds for the inverse branch whose image is `region`:
/// |w2 - w1| / (2M) <= |f(w2) - f(w1)| <= |w2 - w1| / (2m).
RatioBounds derivative_ratio_bounds(const Region& region, double slack = 1e-6);

/// Which region supplies (m, M) for the edge alpha -> beta carrying branch f.
enum class RatioRegion {
    containing, ///< the source vertex's region, which contains f(region beta)
    image,      ///< the image f(region beta) itself
};

const char* to_string(RatioRegion mode);

struct GeometryOptions {
    std::size_t samples_per_side = 256;
    double slack = 1e-6;
    RatioRegion ratio_region = RatioRegion::containing;
};

/// Inner quadrilateral with vertices (+-p, 0) and (0, +-q).
struct InnerQuadrilateral {
    double p = 0.0;
    double q = 0.0;
    bool is_default = true;
};

struct InitialPartition {
    QuadraticMap map;
    InnerQuadrilateral inner;
    std::array<Region, 4> regions;
    MWGraph base_graph; ///< quadrant graph carrying the level-0 ratio bounds
};

/// Quadrant regions bounded by the escape circle, the inner quadrilateral and the axes.
/// Tries p = R, q = sqrt|c| first, then a coarse (p, q) grid; a candidate is accepted when
/// every inverse-branch image of every region lies inside its assigned region and every
/// region keeps m > 1/2. Throws GeometryError describing the first violation otherwise.
InitialPartition build_initial_regions(const QuadraticMap& map, const GeometryOptions& options = {});

/// Quadrant regions for one explicit inner quadrilateral, without any checks.
std::array<Region, 4> quadrant_regions(const QuadraticMap& map, InnerQuadrilateral inner,
                                       std::size_t samples_per_side);

/// Exact membership in the level-0 quadrant region: closed quadrant, |w| <= R and on or
/// outside the inner quadrilateral, each with additive tolerance.
bool quadrant_region_contains(const QuadraticMap& map, InnerQuadrilateral inner, VertexId quadrant,
                              Complex w, double tolerance);

/// Verifies the Markov containment of the four quadrant regions: every inverse-branch image of
/// every boundary sample of region v must lie in region u for each base edge u -> v. Returns a
/// description of the first violation, or nullopt.
std::optional<std::string> check_containment(const QuadraticMap& map, InnerQuadrilateral inner,
                                             const std::array<Region, 4>& regions,
                                             double tolerance);

/// Level-k refinement: vertices are length-k base paths (lexicographic by edge id), edges
/// alpha = e1..ek -> beta = e2..ek e' carry the branch of e1 and its ratio bounds.
struct RefinedIFS {
    std::size_t level = 0;
    QuadraticMap map;
    MWGraph base;
    GeometryOptions options;
    std::vector<Region> regions;
    MWGraph graph;
    std::vector<EdgeId> edge_branch; ///< base edge whose inverse branch each edge carries
};

RefinedIFS initial_ifs(const InitialPartition& partition, const GeometryOptions& options = {});

/// Pushes every region through each applicable branch and reassembles the graph one level down.
RefinedIFS refine(const RefinedIFS& ifs);

struct LevelReport {
    std::size_t level = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double s2 = 0.0; ///< lower dimension bound
    double s1 = 0.0; ///< upper dimension bound
    double seconds = 0.0;
    DimensionResult lower;
    DimensionResult upper;

    double width() const noexcept { return s1 - s2; }
};

enum class FailureKind { none, validation, convergence, geometry, other };

struct BoundsReport {
    Complex c;
    double escape_radius = 0.0;
    InnerQuadrilateral inner;
    GeometryOptions geometry;
    DimensionOptions solver;
    std::vector<LevelReport> levels;
    std::vector<std::string> warnings;
    std::optional<std::size_t> failed_level;
    FailureKind failure = FailureKind::none;
    std::string error;

    bool ok() const noexcept { return failure == FailureKind::none; }
};

struct PipelineOptions {
    std::size_t max_level = 0;
    GeometryOptions geometry;
    DimensionOptions solver;
};

/// Runs levels 0..max_level, solving Phi(s) = 1 on the lower and upper graphs of each.
/// Failures are recorded in the report (with the failing level) rather than thrown, except
/// for the initial region construction, which throws GeometryError.
/// `on_level` sees every refined system before it is solved.
BoundsReport bounds_pipeline(const QuadraticMap& map, const PipelineOptions& options,
                             const std::function<void(const RefinedIFS&)>& on_level = {});

} // namespace julia
} // namespace mwdim
