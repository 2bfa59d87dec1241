#pragma once

#include "mwdim/graph.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mwdim {

/// Square nonnegative matrix in compressed-row form. Immutable after assembly.
class SparseNonnegMatrix {
public:
    struct Entry {
        std::size_t row = 0;
        std::size_t col = 0;
        double value = 0.0;
    };

    SparseNonnegMatrix() = default;

    /// Duplicate (row, col) entries are summed. Throws std::invalid_argument on negative
    /// or non-finite values and out-of-range indices.
    SparseNonnegMatrix(std::size_t n, std::vector<Entry> entries);

    std::size_t size() const noexcept { return n_; }
    std::size_t nonzeros() const noexcept { return values_.size(); }

    std::span<const std::size_t> row_columns(std::size_t row) const;
    std::span<const double> row_values(std::size_t row) const;
    double at(std::size_t row, std::size_t col) const;

    /// y = A x. `y` must have size(), and must not alias `x`.
    void multiply(std::span<const double> x, std::span<double> y) const;

    bool has_empty_rows() const noexcept;
    bool is_zero() const noexcept;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_offset_{0};
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

/// M(s)_{uv} = sum over edges u->v of r_e^s.
SparseNonnegMatrix build_matrix(const MWGraph& graph, double s, RatioKind kind = RatioKind::upper);

/// True iff the nonzero pattern is a strongly connected digraph.
bool is_irreducible(const SparseNonnegMatrix& matrix);

struct SpectralOptions {
    double tol = 1e-12;
    std::size_t max_iter = 100000;
};

struct SpectralResult {
    double radius = 0.0;
    std::vector<double> eigenvector; ///< sum-normalised
    double residual = 0.0;           ///< max-norm of A x - radius x
    std::size_t iterations = 0;
    double lower_bound = 0.0; ///< Collatz-Wielandt min_i (Ax)_i / x_i over x_i > 0
    double upper_bound = 0.0; ///< Collatz-Wielandt max_i (Ax)_i / x_i over x_i > 0
    bool degenerate = false;  ///< zero matrix: radius 0, eigenvector meaningless
};

/// Perron root and eigenvector by power iteration on A / rho_k + I (rho_k the current
/// estimate), sum-normalised.
/// Converged when max|Ax - rho x| <= tol * max(1, rho) * max(x) and the radius estimate
/// changed by at most tol * max(1, rho). `initial`, when nonempty, seeds the iteration
/// (it must be positive). Throws ConvergenceError after max_iter sweeps.
SpectralResult spectral_radius(const SparseNonnegMatrix& matrix, const SpectralOptions& options = {},
                               std::span<const double> initial = {});

/// Phi(s) = rho(M(s)).
double phi(const MWGraph& graph, double s, RatioKind kind = RatioKind::upper,
           const SpectralOptions& options = {});

PerronData perron_data(const MWGraph& graph, double s, RatioKind kind = RatioKind::upper,
                       const SpectralOptions& options = {});

struct DimensionOptions {
    double tol = 1e-10;
    SpectralOptions spectral;
};

struct PhiEvaluation {
    double s = 0.0;
    double phi = 0.0;
    double residual = 0.0;
    std::size_t iterations = 0;
};

struct DimensionResult {
    double s_star = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double phi_lo = 0.0;
    double phi_hi = 0.0;
    std::size_t evaluations = 0;
    std::size_t total_iterations = 0;
    double max_residual = 0.0;
    std::vector<PhiEvaluation> trace;
};

/// Solves Phi(s) = 1 by bracketing: start at [0, 1], double the upper end until
/// Phi < 1, then bisect until the bracket is no wider than options.tol.
DimensionResult solve_dimension(const MWGraph& graph, RatioKind kind = RatioKind::upper,
                                const DimensionOptions& options = {});

/// Entry (u, v) of M(s)^k by k sparse products.
double matrix_power_entry(const MWGraph& graph, double s, VertexId u, VertexId v, std::size_t k,
                          RatioKind kind = RatioKind::upper);

} // namespace mwdim
