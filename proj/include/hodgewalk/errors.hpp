#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hodgewalk {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simplex listed a vertex more than once.
class DegenerateSimplex : public Error {
public:
    using Error::Error;
};

/// An edge, vertex or state index outside its valid range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Vector or operator sizes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid numeric parameter (e.g. beta <= 2 for standard PageRank).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Requested operation is not defined for this input.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// A trajectory step does not follow an edge of the complex.
class InvalidTrajectory : public Error {
public:
    InvalidTrajectory(const std::string& what, std::size_t step)
        : Error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An iterative method ran out of iterations before meeting its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> residuals, std::size_t iterations)
        : Error(what), residuals_(std::move(residuals)), iterations_(iterations) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::vector<double> residuals_;
    std::size_t iterations_;
};

}  // namespace hodgewalk
