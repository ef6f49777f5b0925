#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pact/common.hpp"

namespace pact {

/// Finite ordered set of output levels x_1 < ... < x_n.
class OutputGrid {
public:
    explicit OutputGrid(std::vector<double> points);
    static OutputGrid linspace(double lo, double hi, std::size_t count);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    std::span<const double> points() const { return points_; }
    double min() const { return points_.front(); }
    double max() const { return points_.back(); }

    bool operator==(const OutputGrid&) const = default;

private:
    std::vector<double> points_;
};

/// Finite ordered set of productivity types, all strictly inside (0, 1).
/// A single point is allowed (degenerate screening problem).
class TypeGrid {
public:
    explicit TypeGrid(std::vector<double> points);
    static TypeGrid linspace(double lo, double hi, std::size_t count);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    std::span<const double> points() const { return points_; }
    double lower() const { return points_.front(); }
    double upper() const { return points_.back(); }
    double max_spacing() const;

    bool operator==(const TypeGrid&) const = default;

private:
    std::vector<double> points_;
};

}  // namespace pact
