#pragma once

#include "mwdim/graph.hpp"

#include <filesystem>
#include <iosfwd>

namespace mwdim {

// Text format:
//
//   # comment
//   <vertex count>
//   <source> <target> <ratio_upper> [<ratio_lower>]
//   ...
//
// Vertex ids are 0-based. The lower ratio column must appear on every edge or on none.
// Anything after '#' on a line is ignored.

MWGraph parse_graph(std::istream& in);
MWGraph read_graph_file(const std::filesystem::path& path);

/// Writes ratios in shortest round-trip form, so parse_graph(write_graph(g)) == g.
void write_graph(std::ostream& out, const MWGraph& graph);
void write_graph_file(const std::filesystem::path& path, const MWGraph& graph);

} // namespace mwdim
