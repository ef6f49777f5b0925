#include "pact/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace pact {

KernelFn KernelFn::power(double scale, double exponent, double shift) {
    if (!(scale > 0.0)) throw Error("KernelFn::power: scale must be positive");
    if (!(exponent > 0.0)) throw Error("KernelFn::power: exponent must be positive");
    return KernelFn(KernelKind::power, scale, exponent, shift);
}

KernelFn KernelFn::affine(double slope, double intercept) {
    if (!(slope > 0.0)) throw Error("KernelFn::affine: slope must be positive");
    return KernelFn(KernelKind::affine, slope, intercept, 0.0);
}

KernelFn KernelFn::exponential(double scale, double rate, double shift) {
    if (!(scale * rate > 0.0)) throw Error("KernelFn::exponential: scale * rate must be positive");
    return KernelFn(KernelKind::exponential, scale, rate, shift);
}

KernelFn KernelFn::table(std::vector<double> x, std::vector<double> z) {
    if (x.size() != z.size() || x.size() < 2) throw Error("KernelFn::table: need matching lists of >= 2 points");
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i] < x[i + 1])) throw Error("KernelFn::table: breakpoints must be strictly increasing");
        if (!(z[i] < z[i + 1])) throw Error("KernelFn::table: values must be strictly increasing");
    }
    KernelFn k(KernelKind::table, 0, 0, 0);
    k.tx_ = std::move(x);
    k.tz_ = std::move(z);
    return k;
}

namespace {
// Segment index for table lookup: largest i with tx[i] <= x, clamped.
std::size_t segment_of(const std::vector<double>& tx, double x) {
    auto it = std::upper_bound(tx.begin(), tx.end(), x);
    if (it == tx.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - tx.begin()) - 1;
    return std::min(i, tx.size() - 2);
}
}  // namespace

double KernelFn::value(double x) const {
    switch (kind_) {
        case KernelKind::power: return p0_ * std::pow(x, p1_) + p2_;
        case KernelKind::affine: return p0_ * x + p1_;
        case KernelKind::exponential: return p0_ * std::exp(p1_ * x) + p2_;
        case KernelKind::table: {
            const std::size_t i = segment_of(tx_, x);
            const double t = (x - tx_[i]) / (tx_[i + 1] - tx_[i]);
            return tz_[i] + t * (tz_[i + 1] - tz_[i]);
        }
    }
    return 0.0;
}

double KernelFn::d1(double x) const {
    switch (kind_) {
        case KernelKind::power: return p0_ * p1_ * std::pow(x, p1_ - 1.0);
        case KernelKind::affine: return p0_;
        case KernelKind::exponential: return p0_ * p1_ * std::exp(p1_ * x);
        case KernelKind::table: {
            // One-sided: right slope inside, left slope at the top breakpoint.
            std::size_t i = segment_of(tx_, x);
            if (x >= tx_.back()) i = tx_.size() - 2;
            return (tz_[i + 1] - tz_[i]) / (tx_[i + 1] - tx_[i]);
        }
    }
    return 0.0;
}

double KernelFn::d2(double x) const {
    switch (kind_) {
        case KernelKind::power: return p0_ * p1_ * (p1_ - 1.0) * std::pow(x, p1_ - 2.0);
        case KernelKind::affine: return 0.0;
        case KernelKind::exponential: return p0_ * p1_ * p1_ * std::exp(p1_ * x);
        case KernelKind::table: return 0.0;
    }
    return 0.0;
}

std::vector<double> KernelFn::values_on(const OutputGrid& grid) const {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = value(grid[i]);
    return out;
}

void KernelFn::require_increasing_on(const OutputGrid& grid) const {
    const auto z = values_on(grid);
    for (std::size_t i = 0; i + 1 < z.size(); ++i)
        if (!(z[i] < z[i + 1]))
            throw Error("KernelFn: kernel must be strictly increasing across the output grid");
    // Convex power kinds have a vanishing slope at x = 0; a flat first point
    // is fine as long as the values strictly increase.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = d1(grid[i]);
        if (!std::isfinite(d) || d < 0.0 || (i > 0 && !(d > 0.0)))
            throw Error("KernelFn: kernel slope must be positive and finite on the grid");
    }
}

std::string KernelFn::name() const {
    switch (kind_) {
        case KernelKind::power: return "power";
        case KernelKind::affine: return "affine";
        case KernelKind::exponential: return "exp";
        case KernelKind::table: return "table";
    }
    return "?";
}

namespace {
bool slopes_monotone(const KernelFn& z, const OutputGrid& grid, bool nondecreasing, double tol) {
    double prev = 0.0;
    bool first = true;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double s = (z.value(grid[i + 1]) - z.value(grid[i])) / (grid[i + 1] - grid[i]);
        if (!first) {
            if (nondecreasing && s < prev - tol) return false;
            if (!nondecreasing && s > prev + tol) return false;
        }
        prev = s;
        first = false;
    }
    return true;
}
}  // namespace

bool kernel_convex_on(const KernelFn& z, const OutputGrid& grid, double tol) {
    return slopes_monotone(z, grid, true, tol);
}

bool kernel_concave_on(const KernelFn& z, const OutputGrid& grid, double tol) {
    return slopes_monotone(z, grid, false, tol);
}

}  // namespace pact
