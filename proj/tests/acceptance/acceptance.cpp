// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "support/oracles.hpp"

#include "mwdim/boxcount.hpp"
#include "mwdim/commands.hpp"
#include "mwdim/detail/scc.hpp"
#include "mwdim/graph.hpp"
#include "mwdim/julia.hpp"
#include "mwdim/spectral.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using namespace mwdim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> check;
};

const double sqrt3 = std::sqrt(3.0);
const double m_closest = std::sqrt(9.0 + 3.0 * sqrt3) / 6.0;

std::optional<std::pair<double, double>> deep_bracket;

std::string fmt(double x, int digits = 9) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

MWGraph quadrant_graph_with(double upper, double lower) {
    std::vector<EdgeSpec> edges;
    const VertexId pairs[8][2] = {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 2}, {3, 3}};
    for (const auto& p : pairs) edges.push_back({p[0], p[1], upper, lower});
    return MWGraph(4, edges);
}

struct BoundsRun {
    int code = -1;
    std::string printed;
    std::string errors;
    nlohmann::json report;
};

BoundsRun run_julia_bounds(std::size_t depth) {
    const fs::path dir = fs::temp_directory_path() / ("mwdim-acceptance-" + std::to_string(depth) + "-" +
                                                      std::to_string(std::random_device{}()));
    cli::JuliaBoundsArgs args;
    args.depth = depth;
    args.out_dir = dir;
    args.region_levels = 0;
    std::ostringstream out, err;
    BoundsRun run;
    run.code = cli::cmd_julia_bounds(args, out, err);
    run.printed = out.str();
    run.errors = err.str();
    if (run.code == cli::exit_ok) {
        std::ifstream in(dir / "bounds.json");
        run.report = nlohmann::json::parse(in);
    }
    fs::remove_all(dir);
    return run;
}

std::pair<double, double> level_bracket(const BoundsRun& run, std::size_t level) {
    const auto& row = run.report.at("levels").at(level);
    return {row.at("s2").get<double>(), row.at("s1").get<double>()};
}

Outcome closed_forms() {
    const auto g = quadrant_graph_with(1.0 / (2.0 * m_closest), 1.0 / (1.0 + sqrt3));
    const double s2 = solve_dimension(g, RatioKind::lower).s_star;
    const double s1 = solve_dimension(g, RatioKind::upper).s_star;
    const double exact = std::log(2.0) / std::log(1.0 + sqrt3);
    const bool pass = std::abs(s2 - exact) <= 1e-8 && s1 > 3.0410 && s1 < 3.0420;
    return {pass, "s2 = " + fmt(s2, 12) + " (|err| " + fmt(std::abs(s2 - exact), 2) + "), s1 = " + fmt(s1, 12)};
}

Outcome level0() {
    const auto run = run_julia_bounds(0);
    if (run.code != cli::exit_ok) return {false, "exit " + std::to_string(run.code) + ": " + run.errors};
    const auto [s2, s1] = level_bracket(run, 0);
    const bool contains = s2 <= 0.690 && s1 >= 3.041;
    const bool inside = s2 >= 0.689 && s1 <= 3.042;
    const bool printed = run.printed.find("0.689 < dim K < 3.042") != std::string::npos;
    return {contains && inside && printed, "(" + fmt(s2) + ", " + fmt(s1) + ")" + (printed ? ", printed 0.689 < dim K < 3.042" : ", display line missing")};
}

Outcome level1() {
    const auto run = run_julia_bounds(1);
    if (run.code != cli::exit_ok) return {false, "exit " + std::to_string(run.code) + ": " + run.errors};
    const auto [s2, s1] = level_bracket(run, 1);
    const bool pass = std::abs(s2 - 0.735) <= 0.05 && std::abs(s1 - 1.758) <= 0.05;
    return {pass, "(" + fmt(s2) + ", " + fmt(s1) + ") against (0.735, 1.758) +- 0.05"};
}

Outcome level10() {
    const auto run = run_julia_bounds(10);
    if (run.code != cli::exit_ok) return {false, "exit " + std::to_string(run.code) + ": " + run.errors};
    const auto& row = run.report.at("levels").at(10);
    const auto [s2, s1] = level_bracket(run, 10);
    deep_bracket = std::make_pair(s2, s1);
    const bool pass = row.at("nodes").get<std::size_t>() == 4096 && s1 - s2 <= 0.05 && s2 <= 1.07336 &&
                      1.07336 <= s1 && s2 <= 1.077 && s1 >= 1.069;
    return {pass, "4096 nodes, (" + fmt(s2) + ", " + fmt(s1) + "), width " + fmt(s1 - s2, 4)};
}

Outcome perron_frobenius() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> value(0.05, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t failures = 0;
    std::ostringstream note;

    // (a) constant row sums
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 20;
        std::vector<SparseNonnegMatrix::Entry> entries;
        std::vector<double> rows(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            entries.push_back({i, (i + 1) % n, value(rng)});
            for (int k = 0; k < 3; ++k) entries.push_back({i, static_cast<std::size_t>(unit(rng) * n) % n, value(rng)});
        }
        for (const auto& e : entries) rows[e.row] += e.value;
        const double sigma = 0.1 + 3.0 * unit(rng);
        for (auto& e : entries) e.value *= sigma / rows[e.row];
        const double radius = spectral_radius(SparseNonnegMatrix(n, entries)).radius;
        if (std::abs(radius - sigma) > 1e-10 * std::max(1.0, sigma)) ++failures;
    }
    note << "row sums ok " << (failures == 0 ? "yes" : "no");

    // (b) entrywise monotonicity on irreducible pairs
    std::size_t mono_fail = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 15;
        std::vector<SparseNonnegMatrix::Entry> big, small;
        for (std::size_t i = 0; i < n; ++i) big.push_back({i, (i + 1) % n, value(rng)});
        for (std::size_t k = 0; k < 2 * n; ++k) {
            big.push_back({static_cast<std::size_t>(unit(rng) * n) % n, static_cast<std::size_t>(unit(rng) * n) % n, value(rng)});
        }
        for (const auto& e : big) small.push_back({e.row, e.col, e.value * unit(rng)});
        const SparseNonnegMatrix a(n, big), b(n, small);
        SpectralOptions opts;
        const double ra = spectral_radius(a, opts).radius;
        const double rb = testing::dense_spectral_radius(b);
        if (ra < rb - opts.tol * std::max(1.0, ra)) ++mono_fail;
    }
    failures += mono_fail;
    note << ", monotone pairs 200 (" << mono_fail << " violations)";

    // (c) every edge multiset on 1..3 vertices with 1..6 edges, k <= 8
    std::size_t graphs = 0, path_fail = 0;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t pairs = n * n;
        for (std::size_t m = 1; m <= 6; ++m) {
            std::vector<std::size_t> pick(m, 0); // nondecreasing pair indices = multiset
            while (true) {
                std::vector<EdgeSpec> edges;
                for (std::size_t p : pick) {
                    edges.push_back({static_cast<VertexId>(p / n), static_cast<VertexId>(p % n), 0.1 + 0.85 * unit(rng)});
                }
                const MWGraph g(n, edges);
                ++graphs;
                const double s = 0.7;
                for (VertexId u = 0; u < n; ++u) {
                    const auto oracle = testing::path_sums_from(g, s, u, 8);
                    for (std::size_t k = 0; k <= 8; ++k) {
                        for (VertexId v = 0; v < n; ++v) {
                            const double got = matrix_power_entry(g, s, u, v, k);
                            const double err = std::abs(got - oracle[k][v]) / std::max(1.0, oracle[k][v]);
                            worst = std::max(worst, err);
                            if (err > 1e-10) ++path_fail;
                        }
                    }
                }
                std::size_t i = m;
                while (i > 0 && pick[i - 1] == pairs - 1) --i;
                if (i == 0) break;
                const std::size_t next = pick[i - 1] + 1;
                for (std::size_t j = i - 1; j < m; ++j) pick[j] = next;
            }
        }
    }
    failures += path_fail;
    note << ", path sums on " << graphs << " graphs (worst rel err " << fmt(worst, 2) << ")";
    return {failures == 0, note.str()};
}

Outcome cross_cuts() {
    std::mt19937_64 rng(77);
    DimensionOptions opts;
    opts.tol = 1e-13;
    opts.spectral.tol = 1e-14;
    std::size_t cuts = 0, paths = 0, failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = testing::random_graph(rng, 1 + trial % 6, 2, trial % 3, 0.1, 0.6);
        const double s1 = solve_dimension(g, RatioKind::upper, opts).s_star;
        const auto perron = perron_data(g, s1, RatioKind::upper, opts.spectral);
        const double r_min = g.min_ratio();
        for (double delta : {0.5, 0.1, 0.02}) {
            const auto cut = cross_cut_first_below(g, delta);
            ++cuts;
            for (VertexId u = 0; u < g.vertex_count(); ++u) {
                double sum = 0.0;
                for (const Path& p : cut.by_source[u]) {
                    const double r = path_ratio(p, g);
                    if (!(r < delta && r >= delta * r_min)) ++failures;
                    sum += cylinder_measure(p, s1, perron, g);
                    ++paths;
                }
                const double lambda = perron.eigenvector[u];
                const double err = std::abs(sum - lambda) / lambda;
                worst = std::max(worst, err);
                if (err > 1e-9) ++failures;
            }
        }
    }
    return {failures == 0, std::to_string(cuts) + " cuts, " + std::to_string(paths) +
                               " paths, worst identity error " + fmt(worst, 2)};
}

// rho of a possibly reducible matrix: the largest radius over its strongly connected diagonal
// blocks, each of which is irreducible (or a 1x1 zero).
double blockwise_radius(const SparseNonnegMatrix& m) {
    std::size_t count = 0;
    const auto component = detail::strong_components(
        m.size(), [&](std::size_t v, auto&& visit) { for (std::size_t w : m.row_columns(v)) visit(w); }, &count);
    std::vector<std::vector<std::size_t>> members(count);
    std::vector<std::size_t> local(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) {
        local[v] = members[component[v]].size();
        members[component[v]].push_back(v);
    }
    double best = 0.0;
    for (const auto& block : members) {
        std::vector<SparseNonnegMatrix::Entry> entries;
        for (std::size_t v : block) {
            const auto cols = m.row_columns(v);
            const auto vals = m.row_values(v);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (component[cols[k]] == component[v]) entries.push_back({local[v], local[cols[k]], vals[k]});
            }
        }
        best = std::max(best, spectral_radius(SparseNonnegMatrix(block.size(), entries)).radius);
    }
    return best;
}

Outcome sosc() {
    std::mt19937_64 rng(91);
    std::size_t checks = 0, failures = 0, reducible = 0;
    double margin = 1e300, oracle_gap = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n_vertices = 1 + trial % 5;
        const auto g = testing::random_graph(rng, n_vertices, 2, trial % 3, 0.1, 0.9);
        // zeta_v: the Hamiltonian cycle v -> v+1 -> ... -> v built into random_graph, or a loop.
        std::vector<Path> cycles;
        for (VertexId v = 0; v < n_vertices; ++v) {
            Path z{v, {}};
            VertexId at = v;
            do {
                const auto out = g.out_edges(at);
                const EdgeId next = *std::find_if(out.begin(), out.end(), [&](EdgeId e) {
                    return g.target(e) == (at + 1) % n_vertices;
                });
                z.edges.push_back(next);
                at = g.target(next);
            } while (at != v);
            cycles.push_back(z);
        }
        const double s1 = solve_dimension(g).s_star;
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto aug = augment_for_sosc(g, cycles, n);
            for (double s : {0.5 * s1, s1, 2.0 * s1}) {
                double c = 1e300;
                for (const Path& z : cycles) c = std::min(c, std::pow(path_ratio(z, g), s));
                const auto m = build_matrix(aug, s);
                if (!is_irreducible(m)) ++reducible;
                const double lhs = blockwise_radius(m);
                oracle_gap = std::max(oracle_gap, std::abs(lhs - testing::dense_spectral_radius(m)));
                if (oracle_gap > 1e-9) ++failures;
                const double rhs = c * std::pow(phi(g, s), static_cast<double>(n));
                margin = std::min(margin, lhs - rhs);
                ++checks;
                if (lhs < rhs - 1e-9) ++failures;
            }
        }
    }
    return {failures == 0, std::to_string(checks) + " inequalities (" + std::to_string(reducible) +
                               " reducible), smallest margin " + fmt(margin, 3) + ", dense cross-check " +
                               fmt(oracle_gap, 2)};
}

Outcome box_counting() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> square(1000000);
    for (auto& z : square) z = {u(rng), u(rng)};
    std::vector<Complex> segment(100000);
    for (std::size_t i = 0; i < segment.size(); ++i) segment[i] = {u(rng), 0.25};

    const auto calib = boxcount::geometric_scales(std::ldexp(1.0, -8), std::ldexp(1.0, -3), 6);
    const double sq = boxcount::estimate_dimension(square, calib).slope;
    const double seg = boxcount::estimate_dimension(segment, calib).slope;

    const julia::QuadraticMap f;
    const auto cloud = boxcount::sample_julia(f, 1000000, 1000, 1);
    const auto scales = boxcount::geometric_scales(std::ldexp(1.0, -9), std::ldexp(1.0, -4), 6);
    const double jul = boxcount::estimate_dimension(cloud.points, scales).slope;

    if (!deep_bracket) {
        julia::PipelineOptions opts;
        opts.max_level = 10;
        const auto report = julia::bounds_pipeline(f, opts);
        deep_bracket = std::make_pair(report.levels.back().s2, report.levels.back().s1);
    }
    const auto [lo, hi] = *deep_bracket;
    const bool pass = std::abs(sq - 2.0) <= 0.10 && std::abs(seg - 1.0) <= 0.05 && jul >= 1.00 && jul <= 1.15 &&
                      jul >= lo - 0.15 && jul <= hi + 0.15;
    return {pass, "square " + fmt(sq, 5) + ", segment " + fmt(seg, 5) + ", julia " + fmt(jul, 5) +
                      " (bracket " + fmt(lo, 5) + ".." + fmt(hi, 5) + " +- 0.15)"};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"closed-form level-0 dimensions", 1.0, closed_forms},
        {"level-0 bracket via julia-bounds", 5.0, level0},
        {"level-1 bracket", 30.0, level1},
        {"depth-10 bracket", 600.0, level10},
        {"Perron-Frobenius properties", 30.0, perron_frobenius},
        {"cross-cut sandwich and measure identity", 60.0, cross_cuts},
        {"SOSC augmentation inequality", 60.0, sosc},
        {"box-count calibration and Julia slope", 120.0, box_counting},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds <= c.budget_seconds;
        const bool pass = outcome.pass && in_time;
        if (!pass) ++failed;
        std::cout << (pass ? "PASS " : "FAIL ") << i + 1 << ". " << c.name << ": " << outcome.detail << " ["
                  << std::fixed << std::setprecision(2) << seconds << " s of " << std::setprecision(0)
                  << c.budget_seconds << " s" << (in_time ? "" : ", over budget") << "]\n"
                  << std::defaultfloat;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
