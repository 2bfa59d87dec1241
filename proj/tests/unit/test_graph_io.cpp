#include "support/oracles.hpp"

#include "mwdim/errors.hpp"
#include "mwdim/graph_io.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace mwdim;

namespace {

MWGraph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("parse a commented graph file") {
    const auto g = parse("# moran\n1\n0 0 0.5   # first\n\n0 0 0.5\n");
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 2);
    CHECK(g.ratio(1) == 0.5);
    CHECK_FALSE(g.has_lower_ratios());

    const auto lower = parse("2\n0 1 0.5 0.25\n1 0 0.5 0.125\n");
    REQUIRE(lower.has_lower_ratios());
    CHECK(lower.ratio(1, RatioKind::lower) == 0.125);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line("1\n0 0 abc\n") == 2);
    CHECK(error_line("1\n0 0 0.5\n0 0\n") == 3);
    CHECK(error_line("2 3\n") == 1);
    CHECK(error_line("2\n0 2 0.5\n") == 2);
    CHECK(error_line("1\n\n\n0 0 -0.5\n") == 4);
    CHECK(error_line("1\n0 0 0\n") == 2);
    CHECK(error_line("1\n0 0 inf\n") == 2);
    CHECK(error_line("1\n0 0 0.5 0.1\n0 0 0.5\n") == 3);
    CHECK(error_line("1\n0 0 0.5x\n") == 2);
    CHECK_THROWS_AS(parse("# nothing\n"), ParseError);
}

TEST_CASE("written graphs re-parse identically") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = testing::random_graph(rng, 1 + trial % 6, 2, trial % 5, 1e-3, 0.999, trial % 2 == 0);
        std::stringstream buffer;
        write_graph(buffer, g);
        const auto back = parse_graph(buffer);
        CHECK(back == g);
    }
}
