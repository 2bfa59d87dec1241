#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwdim {

/// Base class for all library failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A structural precondition on a graph or matrix does not hold.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An iterative solver stopped before reaching its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double residual,
                     std::size_t iterations)
        : Error(what), best_estimate_(best_estimate), residual_(residual),
          iterations_(iterations) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double residual() const noexcept { return residual_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    double best_estimate_;
    double residual_;
    std::size_t iterations_;
};

/// Planar region construction failed (containment, origin too close, branch point).
class GeometryError : public Error {
public:
    using Error::Error;
};

} // namespace mwdim
