#include "mwdim/spectral.hpp"

#include "mwdim/detail/scc.hpp"
#include "mwdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mwdim {

SparseNonnegMatrix::SparseNonnegMatrix(std::size_t n, std::vector<Entry> entries) : n_(n) {
    for (const Entry& e : entries) {
        if (e.row >= n || e.col >= n) throw std::invalid_argument("matrix index out of range");
        if (!(e.value >= 0.0) || !std::isfinite(e.value)) {
            throw std::invalid_argument("matrix entries must be finite and nonnegative");
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    row_offset_.assign(n + 1, 0);
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < entries.size() && entries[j].row == entries[i].row &&
               entries[j].col == entries[i].col) {
            sum += entries[j].value;
            ++j;
        }
        if (sum > 0.0) {
            cols_.push_back(entries[i].col);
            values_.push_back(sum);
            ++row_offset_[entries[i].row + 1];
        }
        i = j;
    }
    std::partial_sum(row_offset_.begin(), row_offset_.end(), row_offset_.begin());
}

std::span<const std::size_t> SparseNonnegMatrix::row_columns(std::size_t row) const {
    return std::span<const std::size_t>(cols_).subspan(row_offset_.at(row),
                                                       row_offset_[row + 1] - row_offset_[row]);
}

std::span<const double> SparseNonnegMatrix::row_values(std::size_t row) const {
    return std::span<const double>(values_).subspan(row_offset_.at(row),
                                                    row_offset_[row + 1] - row_offset_[row]);
}

double SparseNonnegMatrix::at(std::size_t row, std::size_t col) const {
    const auto cols = row_columns(row);
    const auto it = std::lower_bound(cols.begin(), cols.end(), col);
    if (it == cols.end() || *it != col) return 0.0;
    return row_values(row)[static_cast<std::size_t>(it - cols.begin())];
}

void SparseNonnegMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t k = row_offset_[i]; k < row_offset_[i + 1]; ++k) {
            acc += values_[k] * x[cols_[k]];
        }
        y[i] = acc;
    }
}

bool SparseNonnegMatrix::has_empty_rows() const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
        if (row_offset_[i] == row_offset_[i + 1]) return true;
    }
    return false;
}

bool SparseNonnegMatrix::is_zero() const noexcept { return values_.empty(); }

SparseNonnegMatrix build_matrix(const MWGraph& graph, double s, RatioKind kind) {
    if (!(s >= 0.0)) throw std::invalid_argument("exponent s must be nonnegative");
    const auto ratios = graph.ratios(kind);
    std::vector<SparseNonnegMatrix::Entry> entries;
    entries.reserve(graph.edge_count());
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        entries.push_back({graph.source(e), graph.target(e), std::pow(ratios[e], s)});
    }
    return SparseNonnegMatrix(graph.vertex_count(), std::move(entries));
}

bool is_irreducible(const SparseNonnegMatrix& matrix) {
    if (matrix.size() == 0) return false;
    std::size_t count = 0;
    detail::strong_components(
        matrix.size(),
        [&](std::size_t v, auto&& visit) {
            for (std::size_t w : matrix.row_columns(v)) visit(w);
        },
        &count);
    return count == 1;
}

SpectralResult spectral_radius(const SparseNonnegMatrix& matrix, const SpectralOptions& options,
                               std::span<const double> initial) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("spectral tolerance must be positive");
    const std::size_t n = matrix.size();
    SpectralResult result;
    if (n == 0) {
        result.degenerate = true;
        return result;
    }
    if (matrix.is_zero()) {
        result.degenerate = true;
        result.eigenvector.assign(n, 1.0 / static_cast<double>(n));
        return result;
    }

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    if (!initial.empty()) {
        if (initial.size() != n) throw std::invalid_argument("initial vector has wrong size");
        const double total = std::accumulate(initial.begin(), initial.end(), 0.0);
        const bool positive =
            std::all_of(initial.begin(), initial.end(), [](double v) { return v > 0.0; });
        if (positive && total > 0.0 && std::isfinite(total)) {
            for (std::size_t i = 0; i < n; ++i) x[i] = initial[i] / total;
        }
    }
    std::vector<double> y(n);
    double previous = std::numeric_limits<double>::quiet_NaN();
    double rho = 0.0;
    double residual = std::numeric_limits<double>::infinity();

    for (std::size_t it = 1; it <= options.max_iter; ++it) {
        matrix.multiply(x, y);
        // sum(x) == 1, so sum(Ax) is the sum-weighted Rayleigh quotient.
        rho = std::accumulate(y.begin(), y.end(), 0.0);
        residual = 0.0;
        double x_max = 0.0;
        double cw_lo = std::numeric_limits<double>::infinity();
        double cw_hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(y[i] - rho * x[i]));
            x_max = std::max(x_max, x[i]);
            if (x[i] > 0.0) {
                const double q = y[i] / x[i];
                cw_lo = std::min(cw_lo, q);
                cw_hi = std::max(cw_hi, q);
            }
        }
        const double scale = std::max(1.0, rho);
        if (residual <= options.tol * scale * x_max &&
            std::abs(rho - previous) <= options.tol * scale) {
            result.radius = rho;
            result.eigenvector = std::move(x);
            result.residual = residual;
            result.iterations = it;
            result.lower_bound = cw_lo;
            result.upper_bound = cw_hi;
            return result;
        }
        previous = rho;
        // One step on A / rho + I: primitive like A + I, but the rate no longer depends on the
        // scale of A (with a unit shift, rho ~ 1e-4 needs ~1e5 steps per decade).
        for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 * (y[i] / rho + x[i]);
    }
    throw ConvergenceError("power iteration did not converge within " +
                               std::to_string(options.max_iter) + " iterations",
                           rho, residual, options.max_iter);
}

double phi(const MWGraph& graph, double s, RatioKind kind, const SpectralOptions& options) {
    return spectral_radius(build_matrix(graph, s, kind), options).radius;
}

PerronData perron_data(const MWGraph& graph, double s, RatioKind kind,
                       const SpectralOptions& options) {
    auto r = spectral_radius(build_matrix(graph, s, kind), options);
    return PerronData{s, r.radius, std::move(r.eigenvector), r.residual, r.iterations};
}

DimensionResult solve_dimension(const MWGraph& graph, RatioKind kind,
                                const DimensionOptions& options) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
    if (kind == RatioKind::lower && !graph.has_lower_ratios()) {
        throw ValidationError("graph has no lower ratios");
    }
    if (graph.vertex_count() == 0) throw ValidationError("graph has no vertices");
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
        if (graph.out_degree(v) == 0) {
            throw ValidationError("vertex " + graph.label(v) +
                                  " has no outgoing edges, so Phi(0) < 1 is possible");
        }
    }
    if (!is_contracting(graph, kind)) {
        throw ValidationError("graph has a cycle with ratio >= 1; Phi(s) never drops below 1");
    }

    DimensionResult result;
    std::vector<double> warm;
    auto evaluate = [&](double s) {
        const auto r = spectral_radius(build_matrix(graph, s, kind), options.spectral, warm);
        warm = r.eigenvector;
        ++result.evaluations;
        result.total_iterations += r.iterations;
        result.max_residual = std::max(result.max_residual, r.residual);
        result.trace.push_back({s, r.radius, r.residual, r.iterations});
        return r.radius;
    };

    double lo = 0.0;
    double phi_lo = evaluate(lo);
    if (phi_lo < 1.0) {
        throw ValidationError("Phi(0) = " + std::to_string(phi_lo) + " < 1");
    }
    double hi = 1.0;
    double phi_hi = evaluate(hi);
    while (phi_hi >= 1.0) {
        lo = hi;
        phi_lo = phi_hi;
        hi *= 2.0;
        if (hi > 1e9) throw ValidationError("Phi(s) stays >= 1; no finite dimension");
        phi_hi = evaluate(hi);
    }
    while (hi - lo > options.tol) {
        const double mid = 0.5 * (lo + hi);
        const double value = evaluate(mid);
        if (value >= 1.0) {
            lo = mid;
            phi_lo = value;
        } else {
            hi = mid;
            phi_hi = value;
        }
    }
    result.lo = lo;
    result.hi = hi;
    result.phi_lo = phi_lo;
    result.phi_hi = phi_hi;
    result.s_star = 0.5 * (lo + hi);
    return result;
}

double matrix_power_entry(const MWGraph& graph, double s, VertexId u, VertexId v, std::size_t k,
                          RatioKind kind) {
    if (u >= graph.vertex_count() || v >= graph.vertex_count()) {
        throw std::out_of_range("vertex id out of range");
    }
    const auto matrix = build_matrix(graph, s, kind);
    std::vector<double> x(graph.vertex_count(), 0.0), y(graph.vertex_count());
    x[v] = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        matrix.multiply(x, y);
        std::swap(x, y);
    }
    return x[u];
}

} // namespace mwdim
