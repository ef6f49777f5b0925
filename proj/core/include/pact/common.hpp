#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pact {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value fell outside the domain of a primitive (e.g. the inverse of a
/// utility function). Carries the offending grid index when known.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what, std::ptrdiff_t grid_index = -1)
        : Error(what), grid_index_(grid_index) {}
    std::ptrdiff_t grid_index() const { return grid_index_; }

private:
    std::ptrdiff_t grid_index_;
};

/// Configuration file problem; message names the offending field.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string field = {})
        : Error(field.empty() ? what : what + " (field: " + field + ")"), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Numeric conventions shared across modules.
inline constexpr double kMassTolerance = 1e-12;      // unit-mass slack for distributions
inline constexpr double kSupportThreshold = 1e-10;   // mass above this counts as support
inline constexpr double kTieTolerance = 1e-9;        // absolute objective-value tie band
inline constexpr double kTernaryTolerance = 1e-10;   // 1-d search width target

/// Trapezoid rule over samples g on abscissae x (non-uniform allowed).
double trapezoid(std::span<const double> x, std::span<const double> g);

/// Running trapezoid integral: out[0] = 0, out[j] = integral from x[0] to x[j].
std::vector<double> trapezoid_prefix(std::span<const double> x, std::span<const double> g);

/// Data-driven estimate of the trapezoid quadrature error for samples g on x.
/// Uses second divided differences as a curvature proxy; returns a small
/// positive floor even for linear data.
double trapezoid_error_estimate(std::span<const double> x, std::span<const double> g);

/// Evenly spaced points from lo to hi inclusive. count >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t count);

inline bool nearly_equal(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace pact
