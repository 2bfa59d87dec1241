#include "mwdim/boxcount.hpp"

#include "mwdim/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mwdim::boxcount {

PointCloud sample_julia(const julia::QuadraticMap& map, std::size_t n_points, std::size_t burn_in,
                        std::uint64_t seed) {
    if (n_points == 0) throw std::invalid_argument("need at least one point");
    PointCloud cloud;
    cloud.seed = seed;
    cloud.burn_in = burn_in;
    cloud.points.reserve(n_points);

    std::mt19937_64 rng(seed);
    const double radius = map.escape_radius();
    Complex z = std::polar(radius, 0.3);
    std::size_t kept_after = burn_in;
    std::size_t step = 0;
    while (cloud.points.size() < n_points) {
        const Complex shifted = z - map.c();
        if (shifted == Complex{0.0, 0.0}) {
            // Critical value: restart on the escape circle and burn in again.
            ++cloud.restarts;
            const double angle =
                std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
            z = std::polar(radius, angle);
            kept_after = step + burn_in;
            continue;
        }
        const Complex root = std::sqrt(shifted);
        z = (rng() >> 63) ? -root : root;
        if (step >= kept_after) cloud.points.push_back(z);
        ++step;
    }
    return cloud;
}

std::size_t box_count(std::span<const Complex> points, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("box size must be positive");
    const double side = delta / std::numbers::sqrt2;
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    cells.reserve(points.size());
    for (Complex z : points) {
        cells.emplace_back(static_cast<std::int64_t>(std::floor(z.real() / side)),
                           static_cast<std::int64_t>(std::floor(z.imag() / side)));
    }
    std::sort(cells.begin(), cells.end());
    return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

std::vector<double> geometric_scales(double dmin, double dmax, std::size_t count) {
    if (!(dmin > 0.0) || !(dmax > dmin)) {
        throw std::invalid_argument("scale range needs 0 < dmin < dmax");
    }
    if (count < 2) throw std::invalid_argument("need at least two scales");
    std::vector<double> scales(count);
    const double ratio = std::log(dmin / dmax);
    for (std::size_t i = 0; i < count; ++i) {
        scales[i] = dmax * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    scales.back() = dmin;
    return scales;
}

BoxCountEstimate estimate_dimension(std::span<const Complex> points, std::span<const double> deltas) {
    if (deltas.size() < 4) throw std::invalid_argument("need at least four scales");
    if (points.empty()) throw std::invalid_argument("point cloud is empty");
    std::vector<double> sorted(deltas.begin(), deltas.end());
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.front() > 0.0) || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("scales must be positive and distinct");
    }

    BoxCountEstimate est;
    est.deltas.assign(deltas.begin(), deltas.end());
    std::vector<double> xs, ys;
    for (double d : est.deltas) {
        est.counts.push_back(box_count(points, d));
        xs.push_back(-std::log(d));
        ys.push_back(std::log(static_cast<double>(est.counts.back())));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (est.intercept + est.slope * xs[i]);
        ss += r * r;
    }
    est.residual = std::sqrt(ss / n);
    return est;
}

namespace {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

} // namespace

void write_cloud(std::ostream& out, const PointCloud& cloud) {
    out << "# seed " << cloud.seed << " burn_in " << cloud.burn_in << " restarts " << cloud.restarts
        << " points " << cloud.points.size() << '\n';
    for (Complex z : cloud.points) out << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
}

PointCloud read_cloud(std::istream& in) {
    PointCloud cloud;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            std::istringstream meta(line.substr(hash + 1));
            std::string key;
            while (meta >> key) {
                if (key == "seed") meta >> cloud.seed;
                else if (key == "burn_in") meta >> cloud.burn_in;
                else if (key == "restarts") meta >> cloud.restarts;
            }
            line.resize(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        double re = 0.0, im = 0.0;
        std::string extra;
        if (!(fields >> re >> im) || (fields >> extra)) throw ParseError(line_no, "expected 're im'");
        cloud.points.emplace_back(re, im);
    }
    return cloud;
}

void write_cloud_file(const std::filesystem::path& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write cloud file " + path.string());
    write_cloud(out, cloud);
}

PointCloud read_cloud_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open cloud file " + path.string());
    return read_cloud(in);
}

void write_estimate(std::ostream& out, const BoxCountEstimate& estimate) {
    const auto old = out.precision(12);
    out << "# delta N\n";
    for (std::size_t i = 0; i < estimate.deltas.size(); ++i) {
        out << estimate.deltas[i] << ' ' << estimate.counts[i] << '\n';
    }
    out << "# slope " << estimate.slope << " intercept " << estimate.intercept << " residual "
        << estimate.residual << '\n';
    out.precision(old);
}

} // namespace mwdim::boxcount
