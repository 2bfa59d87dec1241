#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwdim {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Selects the upper-bound ratios r_e or the lower-bound ratios r'_e of a graph.
enum class RatioKind { upper, lower };

const char* to_string(RatioKind kind);

struct EdgeSpec {
    VertexId source = 0;
    VertexId target = 0;
    double ratio = 0.0;
    std::optional<double> lower_ratio;
};

struct Edge {
    EdgeId id = 0;
    VertexId source = 0;
    VertexId target = 0;
};

/// Mauldin-Williams graph: a directed multigraph with a positive ratio on every edge,
/// optionally carrying a second (lower-bound) ratio per edge.
///
/// Vertex and edge ids are dense and all deterministic orderings follow edge id.
/// Immutable after construction. The constructor only checks representational
/// invariants (ids in range, finite positive ratios); structural conditions such as
/// strong connectivity are reported by validate().
class MWGraph {
public:
    MWGraph() = default;
    MWGraph(std::size_t vertex_count, std::span<const EdgeSpec> edges,
            std::vector<std::string> labels = {});

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return source_.size(); }

    Edge edge(EdgeId e) const { return {e, source_.at(e), target_.at(e)}; }
    VertexId source(EdgeId e) const { return source_.at(e); }
    VertexId target(EdgeId e) const { return target_.at(e); }

    double ratio(EdgeId e, RatioKind kind = RatioKind::upper) const;
    std::span<const double> ratios(RatioKind kind = RatioKind::upper) const;
    bool has_lower_ratios() const noexcept { return !lower_.empty(); }

    double min_ratio(RatioKind kind = RatioKind::upper) const;
    double max_ratio(RatioKind kind = RatioKind::upper) const;

    /// Outgoing edge ids of `v`, ascending.
    std::span<const EdgeId> out_edges(VertexId v) const;
    std::size_t out_degree(VertexId v) const { return out_edges(v).size(); }

    /// The vertex label if one was given, otherwise its decimal id.
    std::string label(VertexId v) const;
    bool has_labels() const noexcept { return !labels_.empty(); }

    /// Structural equality: vertex count, edge endpoints and ratios. Labels are ignored.
    friend bool operator==(const MWGraph& a, const MWGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.source_ == b.source_ &&
               a.target_ == b.target_ && a.upper_ == b.upper_ && a.lower_ == b.lower_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<VertexId> source_;
    std::vector<VertexId> target_;
    std::vector<double> upper_;
    std::vector<double> lower_;
    std::vector<std::size_t> out_offset_;
    std::vector<EdgeId> out_edges_;
    std::vector<std::string> labels_;
};

/// A finite path: a home vertex plus a chain of edges. The empty path at u is {u, {}}.
struct Path {
    VertexId source = 0;
    std::vector<EdgeId> edges;

    std::size_t length() const noexcept { return edges.size(); }
    friend bool operator==(const Path&, const Path&) = default;
};

/// Throws ValidationError when consecutive edges do not chain or an id is out of range.
VertexId path_target(const MWGraph& graph, const Path& path);

Path concatenate(const MWGraph& graph, const Path& head, const Path& tail);

/// True iff `prefix` is an initial segment of `path` (same source, leading edges equal).
bool is_prefix(const Path& prefix, const Path& path);

double path_ratio(const Path& path, const MWGraph& graph, RatioKind kind = RatioKind::upper);

/// All paths of exactly `length` edges starting at `from`, lexicographic by edge id.
std::vector<Path> enumerate_paths(const MWGraph& graph, VertexId from, std::size_t length);

// --- structural checks ------------------------------------------------------

enum class IssueKind {
    empty_graph,
    not_strongly_connected,
    low_out_degree,
    ratio_not_contracting,
    lower_exceeds_upper,
};

const char* to_string(IssueKind kind);

struct ValidationIssue {
    IssueKind kind;
    std::size_t index; ///< vertex or edge id the issue refers to (0 for graph-wide issues)
    std::string message;
};

struct ValidationReport {
    bool strongly_connected = false;
    bool out_degree_ok = false;      ///< at least two edges leave each vertex
    bool strictly_contracting = false; ///< every upper ratio in (0,1)
    std::vector<ValidationIssue> issues;

    bool ok() const noexcept { return issues.empty(); }
};

ValidationReport validate(const MWGraph& graph);

bool is_strongly_connected(const MWGraph& graph);

/// Every ratio of the given kind lies below 1.
bool is_strictly_contracting(const MWGraph& graph, RatioKind kind = RatioKind::upper);

/// Maximum over all cycles of the mean of log r_e (Karp's algorithm on -log r_e).
/// Returns nullopt for acyclic graphs.
std::optional<double> max_cycle_mean_log_ratio(const MWGraph& graph,
                                               RatioKind kind = RatioKind::upper);

/// True iff every cycle has ratio product < 1.
bool is_contracting(const MWGraph& graph, RatioKind kind = RatioKind::upper);

// --- cross-cuts and measures -------------------------------------------------

/// Finite antichain of paths, grouped by source vertex.
struct CrossCut {
    std::vector<std::vector<Path>> by_source;

    std::size_t size() const noexcept;
};

/// The "first time less than delta" cross-cut: every path alpha with
/// r(alpha) < delta <= r(alpha minus its last edge). Requires a strictly contracting
/// graph and 0 < delta <= 1.
CrossCut cross_cut_first_below(const MWGraph& graph, double delta,
                               RatioKind kind = RatioKind::upper);

/// Perron data of M(s): positive right eigenvector normalised to sum 1.
struct PerronData {
    double s = 0.0;
    double radius = 0.0;
    std::vector<double> eigenvector;
    double residual = 0.0;
    std::size_t iterations = 0;
};

/// mu_u([alpha]) = r(alpha)^s * lambda_{target(alpha)}.
double cylinder_measure(const Path& path, double s, const PerronData& perron,
                        const MWGraph& graph, RatioKind kind = RatioKind::upper);

/// Builds the graph whose u->v edges are the paths alpha*zeta_v with alpha of length n
/// from u to v, each with ratio r(alpha) r(zeta_v). `cycles[v]` must be a nonempty
/// cycle at v. Lower ratios, when present, are composed the same way.
MWGraph augment_for_sosc(const MWGraph& graph, std::span<const Path> cycles, std::size_t n);

} // namespace mwdim
