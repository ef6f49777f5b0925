#include "pact/dist.hpp"

#include <cmath>
#include <numeric>

namespace pact {

Dist::Dist(std::vector<double> mass) : mass_(std::move(mass)) {
    if (mass_.empty()) throw Error("Dist: empty mass vector");
    double sum = 0.0;
    for (double m : mass_) {
        if (!(m >= 0.0)) throw Error("Dist: negative or non-finite weight");
        sum += m;
    }
    if (std::fabs(sum - 1.0) > kMassTolerance) throw Error("Dist: weights must sum to 1");
}

std::vector<std::size_t> Dist::support() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mass_.size(); ++i)
        if (mass_[i] > kSupportThreshold) idx.push_back(i);
    return idx;
}

Dist make_dirac(const OutputGrid& grid, std::size_t index) {
    if (index >= grid.size()) throw Error("make_dirac: index out of range");
    std::vector<double> mass(grid.size(), 0.0);
    mass[index] = 1.0;
    return Dist(std::move(mass));
}

bool fosd_leq(const Dist& a, const Dist& b) {
    if (a.size() != b.size()) throw Error("fosd_leq: grid mismatch");
    double cdf_a = 0.0, cdf_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cdf_a += a[i];
        cdf_b += b[i];
        if (cdf_b > cdf_a + kMassTolerance) return false;
    }
    return true;
}

double expectation(const Dist& d, std::span<const double> values) {
    if (d.size() != values.size()) throw Error("expectation: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) acc += d[i] * values[i];
    return acc;
}

Dist mix(const Dist& a, const Dist& b, double t) {
    if (a.size() != b.size()) throw Error("mix: grid mismatch");
    if (!(t >= 0.0 && t <= 1.0)) throw Error("mix: t outside [0, 1]");
    std::vector<double> mass(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mass[i] = (1.0 - t) * a[i] + t * b[i];
    return Dist(std::move(mass));
}

}  // namespace pact
