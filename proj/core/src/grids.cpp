#include "pact/grids.hpp"

#include <algorithm>
#include <cmath>

namespace pact {
namespace {

void require_strictly_increasing_finite(std::span<const double> pts, const char* what) {
    for (double p : pts)
        if (!std::isfinite(p)) throw Error(std::string(what) + ": non-finite point");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (!(pts[i] < pts[i + 1])) throw Error(std::string(what) + ": points must be strictly increasing");
}

}  // namespace

OutputGrid::OutputGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw Error("OutputGrid: at least 2 points required");
    require_strictly_increasing_finite(points_, "OutputGrid");
}

OutputGrid OutputGrid::linspace(double lo, double hi, std::size_t count) {
    return OutputGrid(pact::linspace(lo, hi, count));
}

TypeGrid::TypeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error("TypeGrid: at least 1 point required");
    require_strictly_increasing_finite(points_, "TypeGrid");
    if (!(points_.front() > 0.0 && points_.back() < 1.0))
        throw Error("TypeGrid: all points must lie strictly inside (0, 1)");
}

TypeGrid TypeGrid::linspace(double lo, double hi, std::size_t count) {
    return TypeGrid(pact::linspace(lo, hi, count));
}

double TypeGrid::max_spacing() const {
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) h = std::max(h, points_[i + 1] - points_[i]);
    return h;
}

}  // namespace pact
