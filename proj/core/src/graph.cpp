#include "mwdim/graph.hpp"

#include "mwdim/detail/scc.hpp"
#include "mwdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mwdim {

const char* to_string(RatioKind kind) {
    return kind == RatioKind::upper ? "upper" : "lower";
}

const char* to_string(IssueKind kind) {
    switch (kind) {
    case IssueKind::empty_graph: return "empty_graph";
    case IssueKind::not_strongly_connected: return "not_strongly_connected";
    case IssueKind::low_out_degree: return "low_out_degree";
    case IssueKind::ratio_not_contracting: return "ratio_not_contracting";
    case IssueKind::lower_exceeds_upper: return "lower_exceeds_upper";
    }
    return "unknown";
}

MWGraph::MWGraph(std::size_t vertex_count, std::span<const EdgeSpec> edges,
                 std::vector<std::string> labels)
    : vertex_count_(vertex_count), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != vertex_count_) {
        throw std::invalid_argument("label count does not match vertex count");
    }
    const bool any_lower = std::any_of(edges.begin(), edges.end(),
                                       [](const EdgeSpec& e) { return e.lower_ratio.has_value(); });
    source_.reserve(edges.size());
    target_.reserve(edges.size());
    upper_.reserve(edges.size());
    if (any_lower) lower_.reserve(edges.size());

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeSpec& e = edges[i];
        if (e.source >= vertex_count_ || e.target >= vertex_count_) {
            throw std::invalid_argument("edge " + std::to_string(i) + " references a missing vertex");
        }
        if (!(e.ratio > 0.0) || !std::isfinite(e.ratio)) {
            throw std::invalid_argument("edge " + std::to_string(i) + " has a non-positive ratio");
        }
        source_.push_back(e.source);
        target_.push_back(e.target);
        upper_.push_back(e.ratio);
        if (any_lower) {
            if (!e.lower_ratio) {
                throw std::invalid_argument("edge " + std::to_string(i) + " is missing a lower ratio");
            }
            if (!(*e.lower_ratio > 0.0) || !std::isfinite(*e.lower_ratio)) {
                throw std::invalid_argument("edge " + std::to_string(i) +
                                            " has a non-positive lower ratio");
            }
            lower_.push_back(*e.lower_ratio);
        }
    }

    out_offset_.assign(vertex_count_ + 1, 0);
    for (VertexId s : source_) ++out_offset_[s + 1];
    std::partial_sum(out_offset_.begin(), out_offset_.end(), out_offset_.begin());
    out_edges_.resize(source_.size());
    std::vector<std::size_t> fill(out_offset_.begin(), out_offset_.end() - 1);
    for (EdgeId e = 0; e < source_.size(); ++e) out_edges_[fill[source_[e]]++] = e;
}

double MWGraph::ratio(EdgeId e, RatioKind kind) const {
    if (kind == RatioKind::lower) {
        if (lower_.empty()) throw std::logic_error("graph has no lower ratios");
        return lower_.at(e);
    }
    return upper_.at(e);
}

std::span<const double> MWGraph::ratios(RatioKind kind) const {
    if (kind == RatioKind::lower) {
        if (lower_.empty()) throw std::logic_error("graph has no lower ratios");
        return lower_;
    }
    return upper_;
}

double MWGraph::min_ratio(RatioKind kind) const {
    auto r = ratios(kind);
    return r.empty() ? 0.0 : *std::min_element(r.begin(), r.end());
}

double MWGraph::max_ratio(RatioKind kind) const {
    auto r = ratios(kind);
    return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

std::span<const EdgeId> MWGraph::out_edges(VertexId v) const {
    if (v >= vertex_count_) throw std::out_of_range("vertex id out of range");
    return std::span<const EdgeId>(out_edges_).subspan(out_offset_[v],
                                                       out_offset_[v + 1] - out_offset_[v]);
}

std::string MWGraph::label(VertexId v) const {
    if (v >= vertex_count_) throw std::out_of_range("vertex id out of range");
    return labels_.empty() ? std::to_string(v) : labels_[v];
}

// --- paths ------------------------------------------------------------------

VertexId path_target(const MWGraph& graph, const Path& path) {
    if (path.source >= graph.vertex_count()) {
        throw ValidationError("path source vertex out of range");
    }
    VertexId at = path.source;
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
        const EdgeId e = path.edges[i];
        if (e >= graph.edge_count()) {
            throw ValidationError("path edge " + std::to_string(e) + " does not exist");
        }
        if (graph.source(e) != at) {
            throw ValidationError("path breaks at position " + std::to_string(i) + ": edge " +
                                  std::to_string(e) + " does not leave vertex " +
                                  std::to_string(at));
        }
        at = graph.target(e);
    }
    return at;
}

Path concatenate(const MWGraph& graph, const Path& head, const Path& tail) {
    if (path_target(graph, head) != tail.source) {
        throw ValidationError("paths are not concatenable");
    }
    Path out = head;
    out.edges.insert(out.edges.end(), tail.edges.begin(), tail.edges.end());
    return out;
}

bool is_prefix(const Path& prefix, const Path& path) {
    return prefix.source == path.source && prefix.edges.size() <= path.edges.size() &&
           std::equal(prefix.edges.begin(), prefix.edges.end(), path.edges.begin());
}

double path_ratio(const Path& path, const MWGraph& graph, RatioKind kind) {
    path_target(graph, path);
    double r = 1.0;
    for (EdgeId e : path.edges) r *= graph.ratio(e, kind);
    return r;
}

std::vector<Path> enumerate_paths(const MWGraph& graph, VertexId from, std::size_t length) {
    if (from >= graph.vertex_count()) throw std::out_of_range("vertex id out of range");
    std::vector<Path> frontier{Path{from, {}}};
    for (std::size_t step = 0; step < length; ++step) {
        std::vector<Path> next;
        for (const Path& p : frontier) {
            const VertexId at = p.edges.empty() ? p.source : graph.target(p.edges.back());
            for (EdgeId e : graph.out_edges(at)) {
                Path q = p;
                q.edges.push_back(e);
                next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

// --- structural checks -------------------------------------------------------

bool is_strongly_connected(const MWGraph& graph) {
    if (graph.vertex_count() == 0) return false;
    std::size_t count = 0;
    detail::strong_components(
        graph.vertex_count(),
        [&](std::size_t v, auto&& visit) {
            for (EdgeId e : graph.out_edges(static_cast<VertexId>(v))) visit(graph.target(e));
        },
        &count);
    return count == 1;
}

bool is_strictly_contracting(const MWGraph& graph, RatioKind kind) {
    auto r = graph.ratios(kind);
    return std::all_of(r.begin(), r.end(), [](double x) { return x < 1.0; });
}

ValidationReport validate(const MWGraph& graph) {
    ValidationReport report;
    if (graph.vertex_count() == 0) {
        report.issues.push_back({IssueKind::empty_graph, 0, "graph has no vertices"});
        return report;
    }

    report.strongly_connected = is_strongly_connected(graph);
    if (!report.strongly_connected) {
        report.issues.push_back(
            {IssueKind::not_strongly_connected, 0, "graph is not strongly connected"});
    }

    report.out_degree_ok = true;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        const std::size_t d = graph.out_degree(v);
        if (d < 2) {
            report.out_degree_ok = false;
            report.issues.push_back({IssueKind::low_out_degree, v,
                                     "vertex " + graph.label(v) + " has out-degree " +
                                         std::to_string(d) + " (need at least 2)"});
        }
    }

    report.strictly_contracting = true;
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const double r = graph.ratio(e);
        if (!(r < 1.0)) {
            report.strictly_contracting = false;
            report.issues.push_back({IssueKind::ratio_not_contracting, e,
                                     "edge " + std::to_string(e) + " has ratio " +
                                         std::to_string(r) + " >= 1"});
        }
        if (graph.has_lower_ratios() && graph.ratio(e, RatioKind::lower) > r) {
            report.issues.push_back({IssueKind::lower_exceeds_upper, e,
                                     "edge " + std::to_string(e) +
                                         " has lower ratio above its upper ratio"});
        }
    }
    return report;
}

std::optional<double> max_cycle_mean_log_ratio(const MWGraph& graph, RatioKind kind) {
    // Karp on w_e = -log r_e with D_0 = 0 everywhere (implicit zero-weight super source).
    const std::size_t n = graph.vertex_count();
    if (n == 0) return std::nullopt;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dist(n + 1, std::vector<double>(n, inf));
    std::fill(dist[0].begin(), dist[0].end(), 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        for (EdgeId e = 0; e < graph.edge_count(); ++e) {
            const double prev = dist[k - 1][graph.source(e)];
            if (prev == inf) continue;
            const double cand = prev - std::log(graph.ratio(e, kind));
            double& slot = dist[k][graph.target(e)];
            if (cand < slot) slot = cand;
        }
    }
    double best = inf;
    for (std::size_t v = 0; v < n; ++v) {
        if (dist[n][v] == inf) continue;
        double worst = -inf;
        for (std::size_t k = 0; k < n; ++k) {
            if (dist[k][v] == inf) continue;
            worst = std::max(worst, (dist[n][v] - dist[k][v]) / static_cast<double>(n - k));
        }
        best = std::min(best, worst);
    }
    if (best == inf) return std::nullopt;
    return -best;
}

bool is_contracting(const MWGraph& graph, RatioKind kind) {
    if (is_strictly_contracting(graph, kind)) return true;
    const auto mean = max_cycle_mean_log_ratio(graph, kind);
    return !mean || *mean < -1e-14;
}

// --- cross-cuts and measures -------------------------------------------------

std::size_t CrossCut::size() const noexcept {
    std::size_t n = 0;
    for (const auto& group : by_source) n += group.size();
    return n;
}

namespace {

void expand_below(const MWGraph& graph, RatioKind kind, double delta, Path& current,
                  VertexId at, double ratio, std::vector<Path>& out) {
    for (EdgeId e : graph.out_edges(at)) {
        const double child = ratio * graph.ratio(e, kind);
        current.edges.push_back(e);
        if (child < delta) {
            out.push_back(current);
        } else {
            expand_below(graph, kind, delta, current, graph.target(e), child, out);
        }
        current.edges.pop_back();
    }
}

} // namespace

CrossCut cross_cut_first_below(const MWGraph& graph, double delta, RatioKind kind) {
    if (!(delta > 0.0) || delta > 1.0) {
        throw std::invalid_argument("cross-cut threshold must lie in (0, 1]");
    }
    if (!is_strictly_contracting(graph, kind)) {
        throw ValidationError("cross-cut construction requires every ratio below 1");
    }
    CrossCut cut;
    cut.by_source.resize(graph.vertex_count());
    for (VertexId u = 0; u < graph.vertex_count(); ++u) {
        Path current{u, {}};
        expand_below(graph, kind, delta, current, u, 1.0, cut.by_source[u]);
    }
    return cut;
}

double cylinder_measure(const Path& path, double s, const PerronData& perron,
                        const MWGraph& graph, RatioKind kind) {
    const VertexId v = path_target(graph, path);
    if (perron.eigenvector.size() != graph.vertex_count()) {
        throw std::invalid_argument("Perron vector size does not match the graph");
    }
    return std::pow(path_ratio(path, graph, kind), s) * perron.eigenvector[v];
}

MWGraph augment_for_sosc(const MWGraph& graph, std::span<const Path> cycles, std::size_t n) {
    if (cycles.size() != graph.vertex_count()) {
        throw std::invalid_argument("need exactly one cycle per vertex");
    }
    if (n == 0) throw std::invalid_argument("augmentation length must be positive");
    std::vector<double> cycle_upper(cycles.size()), cycle_lower(cycles.size());
    for (VertexId v = 0; v < cycles.size(); ++v) {
        const Path& z = cycles[v];
        if (z.edges.empty() || z.source != v || path_target(graph, z) != v) {
            throw ValidationError("cycle for vertex " + graph.label(v) +
                                  " is not a nonempty cycle at that vertex");
        }
        cycle_upper[v] = path_ratio(z, graph, RatioKind::upper);
        if (graph.has_lower_ratios()) cycle_lower[v] = path_ratio(z, graph, RatioKind::lower);
    }

    std::vector<EdgeSpec> edges;
    for (VertexId u = 0; u < graph.vertex_count(); ++u) {
        for (const Path& alpha : enumerate_paths(graph, u, n)) {
            const VertexId v = graph.target(alpha.edges.back());
            EdgeSpec spec{u, v, path_ratio(alpha, graph) * cycle_upper[v], std::nullopt};
            if (graph.has_lower_ratios()) {
                spec.lower_ratio = path_ratio(alpha, graph, RatioKind::lower) * cycle_lower[v];
            }
            edges.push_back(spec);
        }
    }
    std::vector<std::string> labels;
    if (graph.has_labels()) {
        for (VertexId v = 0; v < graph.vertex_count(); ++v) labels.push_back(graph.label(v));
    }
    return MWGraph(graph.vertex_count(), edges, std::move(labels));
}

} // namespace mwdim
