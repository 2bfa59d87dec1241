#include "mwdim/graph_io.hpp"

#include "mwdim/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mwdim {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

template <class T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
    T value{};
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return value;
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

} // namespace

MWGraph parse_graph(std::istream& in) {
    std::optional<std::size_t> vertex_count;
    std::vector<EdgeSpec> edges;
    std::optional<bool> with_lower;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;

        if (!vertex_count) {
            if (fields.size() != 1) throw ParseError(line_no, "expected the vertex count alone");
            vertex_count = parse_number<std::size_t>(fields[0], line_no, "vertex count");
            continue;
        }
        if (fields.size() != 3 && fields.size() != 4) {
            throw ParseError(line_no, "expected 'source target ratio_upper [ratio_lower]'");
        }
        EdgeSpec spec;
        const auto src = parse_number<std::size_t>(fields[0], line_no, "source vertex");
        const auto dst = parse_number<std::size_t>(fields[1], line_no, "target vertex");
        if (src >= *vertex_count || dst >= *vertex_count) {
            throw ParseError(line_no, "vertex id out of range (vertex count is " +
                                          std::to_string(*vertex_count) + ")");
        }
        spec.source = static_cast<VertexId>(src);
        spec.target = static_cast<VertexId>(dst);
        spec.ratio = parse_number<double>(fields[2], line_no, "ratio");
        if (!(spec.ratio > 0.0) || !std::isfinite(spec.ratio)) {
            throw ParseError(line_no, "ratio must be a finite positive number");
        }
        const bool has_lower = fields.size() == 4;
        if (with_lower && *with_lower != has_lower) {
            throw ParseError(line_no, "lower ratio must be given on every edge or on none");
        }
        with_lower = has_lower;
        if (has_lower) {
            spec.lower_ratio = parse_number<double>(fields[3], line_no, "lower ratio");
            if (!(*spec.lower_ratio > 0.0) || !std::isfinite(*spec.lower_ratio)) {
                throw ParseError(line_no, "lower ratio must be a finite positive number");
            }
        }
        edges.push_back(spec);
    }
    if (!vertex_count) throw ParseError(0, "missing vertex count");
    return MWGraph(*vertex_count, edges);
}

MWGraph read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file " + path.string());
    return parse_graph(in);
}

void write_graph(std::ostream& out, const MWGraph& graph) {
    out << "# Mauldin-Williams graph: source target ratio_upper"
        << (graph.has_lower_ratios() ? " ratio_lower" : "") << "\n";
    out << graph.vertex_count() << "\n";
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        out << graph.source(e) << ' ' << graph.target(e) << ' ' << format_double(graph.ratio(e));
        if (graph.has_lower_ratios()) out << ' ' << format_double(graph.ratio(e, RatioKind::lower));
        out << '\n';
    }
}

void write_graph_file(const std::filesystem::path& path, const MWGraph& graph) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write graph file " + path.string());
    write_graph(out, graph);
}

} // namespace mwdim
