#pragma once

#include "mwdim/julia.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace mwdim::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_parse = 2,
    exit_validation = 3,
    exit_numeric = 4,
    exit_geometry = 5,
    exit_io = 6,
};

inline constexpr std::size_t default_depth_cap = 14;

struct DimArgs {
    std::filesystem::path graph;
    std::string which = "both";
    double tol = 1e-10;
    double spectral_tol = 1e-12;
    std::size_t max_iter = 100000;
};

struct JuliaBoundsArgs {
    Complex c{-0.5, 0.0};
    std::size_t depth = 0;
    std::size_t depth_cap = default_depth_cap;
    double tol = 1e-10;
    double spectral_tol = 1e-12;
    std::filesystem::path out_dir;
    std::size_t samples_per_side = 256;
    double slack = 1e-6;
    julia::RatioRegion ratio_region = julia::RatioRegion::containing;
    std::size_t region_levels = 2; ///< region files are written for levels <= this
};

struct SampleArgs {
    Complex c{-0.5, 0.0};
    std::size_t n = 1000000;
    std::size_t burn_in = 1000;
    std::uint64_t seed = 1;
    std::filesystem::path out;
};

struct BoxdimArgs {
    std::filesystem::path cloud;
    double dmin = 0.0;
    double dmax = 0.0;
    std::size_t scales = 0;
    std::filesystem::path out;                          ///< optional (delta, N) table
    std::optional<std::pair<double, double>> bracket;   ///< dimension bracket to check against
};

struct RenderArgs {
    std::filesystem::path regions;
    std::filesystem::path cloud;
    std::filesystem::path out;
    std::size_t max_points = 20000;
};

int cmd_dim(const DimArgs& args, std::ostream& out, std::ostream& err);
int cmd_julia_bounds(const JuliaBoundsArgs& args, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleArgs& args, std::ostream& out, std::ostream& err);
int cmd_boxdim(const BoxdimArgs& args, std::ostream& out, std::ostream& err);
int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err);

/// "RE" or "RE,IM". Throws std::invalid_argument.
Complex parse_complex(const std::string& text);

/// Full command line (argv[0] included) to exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mwdim::cli
