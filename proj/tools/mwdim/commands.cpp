#include "mwdim/commands.hpp"

#include "mwdim/boxcount.hpp"
#include "mwdim/errors.hpp"
#include "mwdim/graph_io.hpp"
#include "mwdim/julia_io.hpp"
#include "mwdim/render.hpp"
#include "mwdim/spectral.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

namespace mwdim::cli {

namespace {

double parse_real(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

void print_dimension(std::ostream& out, const char* which, const DimensionResult& r) {
    out << which << ":\n"
        << "  s = " << r.s_star << "\n"
        << "  bracket = [" << r.lo << ", " << r.hi << "]\n"
        << "  phi(lo) = " << r.phi_lo << ", phi(hi) = " << r.phi_hi << "\n"
        << "  evaluations = " << r.evaluations << ", power iterations = " << r.total_iterations
        << ", max residual = " << r.max_residual << "\n";
}

int classify(const std::exception& err, std::ostream& errs) {
    errs << "error: " << err.what() << '\n';
    if (dynamic_cast<const ParseError*>(&err)) return exit_parse;
    if (dynamic_cast<const ValidationError*>(&err)) return exit_validation;
    if (dynamic_cast<const ConvergenceError*>(&err)) return exit_numeric;
    if (dynamic_cast<const GeometryError*>(&err)) return exit_geometry;
    if (dynamic_cast<const std::invalid_argument*>(&err)) return exit_usage;
    return exit_io;
}

} // namespace

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_real(text), 0.0};
    return {parse_real(std::string_view(text).substr(0, comma)),
            parse_real(std::string_view(text).substr(comma + 1))};
}

int cmd_dim(const DimArgs& args, std::ostream& out, std::ostream& err) {
    if (args.which != "upper" && args.which != "lower" && args.which != "both") {
        err << "error: --which must be upper, lower or both\n";
        return exit_usage;
    }
    if (!(args.tol > 0.0) || !(args.spectral_tol > 0.0)) {
        err << "error: tolerances must be positive\n";
        return exit_usage;
    }
    try {
        const MWGraph graph = read_graph_file(args.graph);
        const ValidationReport report = validate(graph);
        for (const auto& issue : report.issues) {
            const bool fatal = issue.kind == IssueKind::empty_graph ||
                               issue.kind == IssueKind::not_strongly_connected;
            err << (fatal ? "invalid: " : "warning: ") << to_string(issue.kind) << ": "
                << issue.message << '\n';
        }
        if (!report.strongly_connected) return exit_validation;
        const bool want_lower = args.which != "upper";
        const bool want_upper = args.which != "lower";
        if (want_lower && !graph.has_lower_ratios()) {
            if (args.which == "lower") {
                err << "invalid: graph file has no lower ratio column\n";
                return exit_validation;
            }
        }

        DimensionOptions options;
        options.tol = args.tol;
        options.spectral.tol = args.spectral_tol;
        options.spectral.max_iter = args.max_iter;

        const auto old = out.precision(12);
        out << "graph: " << graph.vertex_count() << " vertices, " << graph.edge_count() << " edges\n";
        std::optional<DimensionResult> upper, lower;
        if (want_upper) {
            upper = solve_dimension(graph, RatioKind::upper, options);
            print_dimension(out, "upper", *upper);
        }
        if (want_lower && graph.has_lower_ratios()) {
            lower = solve_dimension(graph, RatioKind::lower, options);
            print_dimension(out, "lower", *lower);
        }
        if (upper && lower) {
            out << "bracket: " << lower->s_star << " <= dim <= " << upper->s_star << "  ("
                << julia::outward_bracket(lower->s_star, upper->s_star) << ")\n";
        }
        out.precision(old);
        return exit_ok;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

int cmd_julia_bounds(const JuliaBoundsArgs& args, std::ostream& out, std::ostream& err) {
    if (args.depth > args.depth_cap) {
        err << "error: depth " << args.depth << " exceeds the cap " << args.depth_cap
            << " (raise it with --max-depth)\n";
        return exit_usage;
    }
    if (!(args.tol > 0.0) || !(args.spectral_tol > 0.0) || !(args.slack >= 0.0)) {
        err << "error: tolerances must be positive\n";
        return exit_usage;
    }
    try {
        if (!args.out_dir.empty()) std::filesystem::create_directories(args.out_dir);

        julia::PipelineOptions options;
        options.max_level = args.depth;
        options.geometry.samples_per_side = args.samples_per_side;
        options.geometry.slack = args.slack;
        options.geometry.ratio_region = args.ratio_region;
        options.solver.tol = args.tol;
        options.solver.spectral.tol = args.spectral_tol;

        std::optional<MWGraph> last_graph;
        std::size_t last_level = 0;
        const auto on_level = [&](const julia::RefinedIFS& ifs) {
            if (!args.out_dir.empty() && ifs.level <= args.region_levels) {
                julia::write_regions_file(
                    args.out_dir / ("regions_level" + std::to_string(ifs.level) + ".json"),
                    julia::region_set(ifs));
            }
            last_graph = ifs.graph;
            last_level = ifs.level;
        };

        const julia::BoundsReport report =
            julia::bounds_pipeline(julia::QuadraticMap(args.c), options, on_level);

        const auto old = out.precision(12);
        out << "c = " << report.c.real() << (report.c.imag() < 0 ? " - " : " + ")
            << std::abs(report.c.imag()) << "i, escape radius " << report.escape_radius << "\n"
            << "inner quadrilateral p = " << report.inner.p << ", q = " << report.inner.q
            << (report.inner.is_default ? " (default)" : " (grid search)") << "\n";
        for (const auto& row : report.levels) {
            out << "level " << row.level << ": nodes " << row.nodes << ", edges " << row.edges
                << ", s2 = " << row.s2 << ", s1 = " << row.s1 << "  ("
                << julia::outward_bracket(row.s2, row.s1) << ")\n";
        }
        for (const auto& w : report.warnings) err << "warning: " << w << '\n';

        if (!args.out_dir.empty()) {
            std::ofstream table(args.out_dir / "bounds.tsv");
            julia::write_bounds_table(table, report);
            std::ofstream json(args.out_dir / "bounds.json");
            json << julia::to_json(report).dump(2) << '\n';
            if (last_graph) {
                write_graph_file(args.out_dir / ("graph_level" + std::to_string(last_level) + ".txt"),
                                 *last_graph);
            }
            if (!table || !json) {
                err << "error: cannot write reports to " << args.out_dir << '\n';
                return exit_io;
            }
        }

        if (!report.ok()) {
            err << "error: level " << *report.failed_level << " failed: " << report.error << '\n';
            out.precision(old);
            switch (report.failure) {
            case julia::FailureKind::geometry: return exit_geometry;
            case julia::FailureKind::convergence: return exit_numeric;
            case julia::FailureKind::validation: return exit_validation;
            default: return exit_io;
            }
        }
        const auto& final_row = report.levels.back();
        out << "bracket: " << final_row.s2 << " <= dim K <= " << final_row.s1 << "  ("
            << julia::outward_bracket(final_row.s2, final_row.s1) << ")\n";
        out.precision(old);
        return exit_ok;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

int cmd_sample(const SampleArgs& args, std::ostream& out, std::ostream& err) {
    if (args.n == 0) {
        err << "error: --n must be at least 1\n";
        return exit_usage;
    }
    try {
        const auto cloud = boxcount::sample_julia(julia::QuadraticMap(args.c), args.n, args.burn_in,
                                                  args.seed);
        if (args.out.empty()) {
            boxcount::write_cloud(out, cloud);
        } else {
            boxcount::write_cloud_file(args.out, cloud);
            out << "wrote " << cloud.points.size() << " points to " << args.out.string()
                << " (seed " << cloud.seed << ", restarts " << cloud.restarts << ")\n";
        }
        return exit_ok;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

int cmd_boxdim(const BoxdimArgs& args, std::ostream& out, std::ostream& err) {
    if (args.scales < 4) {
        err << "error: --scales must be at least 4\n";
        return exit_usage;
    }
    if (!(args.dmin > 0.0) || !(args.dmax > args.dmin)) {
        err << "error: need 0 < --dmin < --dmax\n";
        return exit_usage;
    }
    try {
        const auto cloud = boxcount::read_cloud_file(args.cloud);
        if (cloud.points.empty()) {
            err << "error: cloud " << args.cloud << " has no points\n";
            return exit_parse;
        }
        const auto scales = boxcount::geometric_scales(args.dmin, args.dmax, args.scales);
        const auto estimate = boxcount::estimate_dimension(cloud.points, scales);
        if (!args.out.empty()) {
            std::ofstream file(args.out);
            if (!file) {
                err << "error: cannot write " << args.out << '\n';
                return exit_io;
            }
            boxcount::write_estimate(file, estimate);
        }
        boxcount::write_estimate(out, estimate);
        if (args.bracket) {
            const auto [lo, hi] = *args.bracket;
            const bool inside = estimate.slope >= lo - 0.15 && estimate.slope <= hi + 0.15;
            const auto old = out.precision(12);
            out << "# consistency " << (inside ? "ok" : "ALARM") << ": slope " << estimate.slope
                << (inside ? " within " : " outside ") << "[" << lo - 0.15 << ", " << hi + 0.15
                << "]\n";
            out.precision(old);
            if (!inside) return exit_numeric;
        }
        return exit_ok;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err) {
    if (args.regions.empty() && args.cloud.empty()) {
        err << "error: render needs --regions and/or --cloud\n";
        return exit_usage;
    }
    if (args.out.empty()) {
        err << "error: render needs --out\n";
        return exit_usage;
    }
    try {
        std::optional<julia::RegionSet> regions;
        std::optional<boxcount::PointCloud> cloud;
        if (!args.regions.empty()) regions = julia::read_regions_file(args.regions);
        if (!args.cloud.empty()) cloud = boxcount::read_cloud_file(args.cloud);
        RenderStyle style;
        style.max_points = args.max_points;
        const std::string svg =
            render_svg(regions ? &*regions : nullptr, cloud ? &*cloud : nullptr, style);
        std::ofstream file(args.out);
        if (!file || !(file << svg)) {
            err << "error: cannot write " << args.out << '\n';
            return exit_io;
        }
        out << "wrote " << args.out.string() << '\n';
        return exit_ok;
    } catch (const std::exception& e) {
        return classify(e, err);
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractal dimension bounds for graph-directed iterated function systems"};
    app.require_subcommand(1);

    DimArgs dim;
    auto* dim_cmd = app.add_subcommand("dim", "Solve rho(M(s)) = 1 for a graph file");
    dim_cmd->add_option("--graph", dim.graph, "Graph file")->required();
    dim_cmd->add_option("--which", dim.which, "upper, lower or both")
        ->check(CLI::IsMember({"upper", "lower", "both"}));
    dim_cmd->add_option("--tol", dim.tol, "Bisection tolerance");
    dim_cmd->add_option("--spectral-tol", dim.spectral_tol, "Power iteration tolerance");
    dim_cmd->add_option("--max-iter", dim.max_iter, "Power iteration limit");

    JuliaBoundsArgs jb;
    std::string jb_c = "-0.5";
    std::string jb_mode = "containing";
    auto* jb_cmd = app.add_subcommand("julia-bounds", "Dimension brackets for the Julia set of z^2 + c");
    jb_cmd->add_option("--c", jb_c, "Parameter RE[,IM]");
    jb_cmd->add_option("--depth", jb.depth, "Refinement depth");
    jb_cmd->add_option("--max-depth", jb.depth_cap, "Depth cap");
    jb_cmd->add_option("--tol", jb.tol, "Bisection tolerance");
    jb_cmd->add_option("--spectral-tol", jb.spectral_tol, "Power iteration tolerance");
    jb_cmd->add_option("--out", jb.out_dir, "Output directory");
    jb_cmd->add_option("--samples", jb.samples_per_side, "Boundary samples per region side");
    jb_cmd->add_option("--slack", jb.slack, "Geometric slack on modulus bounds");
    jb_cmd->add_option("--ratio-region", jb_mode, "containing or image")
        ->check(CLI::IsMember({"containing", "image"}));
    jb_cmd->add_option("--region-levels", jb.region_levels, "Write region files up to this level");

    SampleArgs sample;
    std::string sample_c = "-0.5";
    auto* sample_cmd = app.add_subcommand("sample", "Sample the Julia set by inverse iteration");
    sample_cmd->add_option("--c", sample_c, "Parameter RE[,IM]");
    sample_cmd->add_option("--n", sample.n, "Number of points");
    sample_cmd->add_option("--burn-in", sample.burn_in, "Discarded initial iterates");
    sample_cmd->add_option("--seed", sample.seed, "Random seed");
    sample_cmd->add_option("--out", sample.out, "Output cloud file (stdout if omitted)");

    BoxdimArgs boxdim;
    std::string bracket;
    auto* box_cmd = app.add_subcommand("boxdim", "Box-counting dimension of a point cloud");
    box_cmd->add_option("--cloud", boxdim.cloud, "Cloud file")->required();
    box_cmd->add_option("--dmin", boxdim.dmin, "Smallest box diameter")->required();
    box_cmd->add_option("--dmax", boxdim.dmax, "Largest box diameter")->required();
    box_cmd->add_option("--scales", boxdim.scales, "Number of scales (>= 4)")->required();
    box_cmd->add_option("--out", boxdim.out, "Write the (delta, N) table here");
    box_cmd->add_option("--bracket", bracket, "LO,HI dimension bracket to check against");

    RenderArgs render;
    auto* render_cmd = app.add_subcommand("render", "Draw regions and clouds as SVG");
    render_cmd->add_option("--regions", render.regions, "Region file (JSON)");
    render_cmd->add_option("--cloud", render.cloud, "Cloud file");
    render_cmd->add_option("--out", render.out, "Output SVG")->required();
    render_cmd->add_option("--max-points", render.max_points, "Thin clouds to at most this many dots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*dim_cmd) return cmd_dim(dim, out, err);
        if (*jb_cmd) {
            jb.c = parse_complex(jb_c);
            jb.ratio_region =
                jb_mode == "image" ? julia::RatioRegion::image : julia::RatioRegion::containing;
            return cmd_julia_bounds(jb, out, err);
        }
        if (*sample_cmd) {
            sample.c = parse_complex(sample_c);
            return cmd_sample(sample, out, err);
        }
        if (*box_cmd) {
            if (!bracket.empty()) {
                const Complex b = parse_complex(bracket);
                boxdim.bracket = std::make_pair(b.real(), b.imag());
            }
            return cmd_boxdim(boxdim, out, err);
        }
        if (*render_cmd) return cmd_render(render, out, err);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace mwdim::cli
