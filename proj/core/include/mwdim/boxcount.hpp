#pragma once

#include "mwdim/julia.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace mwdim::boxcount {

struct PointCloud {
    std::vector<Complex> points;
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;
    std::size_t restarts = 0; ///< times the chain hit the critical value and was restarted
};

/// Random inverse iteration: start on the escape circle, apply a uniformly chosen inverse
/// branch at every step, keep the iterates after `burn_in`. Uses std::mt19937_64 seeded with
/// `seed`, so the cloud is a pure function of the arguments.
PointCloud sample_julia(const julia::QuadraticMap& map, std::size_t n_points, std::size_t burn_in,
                        std::uint64_t seed);

/// Number of occupied cells of the origin-anchored grid with side delta/sqrt(2)
/// (so every cell has diameter at most delta).
std::size_t box_count(std::span<const Complex> points, double delta);

/// `count` scales from dmax down to dmin, evenly spaced in log.
std::vector<double> geometric_scales(double dmin, double dmax, std::size_t count);

struct BoxCountEstimate {
    std::vector<double> deltas;
    std::vector<std::size_t> counts;
    double slope = 0.0;     ///< least-squares slope of log N against -log delta
    double intercept = 0.0;
    double residual = 0.0;  ///< root-mean-square fit residual
};

/// Needs at least four distinct positive scales.
BoxCountEstimate estimate_dimension(std::span<const Complex> points, std::span<const double> deltas);

/// Two columns "re im" per line; '#' starts a comment.
void write_cloud(std::ostream& out, const PointCloud& cloud);
PointCloud read_cloud(std::istream& in);
void write_cloud_file(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_cloud_file(const std::filesystem::path& path);

/// "delta N" rows followed by a '#'-prefixed summary with slope and residual.
void write_estimate(std::ostream& out, const BoxCountEstimate& estimate);

} // namespace mwdim::boxcount
