#include "pact/common.hpp"

#include <algorithm>

namespace pact {

double trapezoid(std::span<const double> x, std::span<const double> g) {
    if (x.size() != g.size()) throw Error("trapezoid: abscissae/sample length mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k)
        acc += 0.5 * (g[k] + g[k + 1]) * (x[k + 1] - x[k]);
    return acc;
}

std::vector<double> trapezoid_prefix(std::span<const double> x, std::span<const double> g) {
    if (x.size() != g.size()) throw Error("trapezoid_prefix: abscissae/sample length mismatch");
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t k = 0; k + 1 < x.size(); ++k)
        out[k + 1] = out[k] + 0.5 * (g[k] + g[k + 1]) * (x[k + 1] - x[k]);
    return out;
}

double trapezoid_error_estimate(std::span<const double> x, std::span<const double> g) {
    if (x.size() != g.size()) throw Error("trapezoid_error_estimate: length mismatch");
    const std::size_t n = x.size();
    double scale = 0.0;
    for (double v : g) scale = std::max(scale, std::fabs(v));
    if (n < 3) return 1e-12 * (1.0 + scale);
    double span = x.back() - x.front();
    double h = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) h = std::max(h, x[k + 1] - x[k]);
    // Curvature proxy: largest second divided difference, doubled.
    double curv = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double h0 = x[k] - x[k - 1];
        const double h1 = x[k + 1] - x[k];
        const double dd = ((g[k + 1] - g[k]) / h1 - (g[k] - g[k - 1]) / h0) / (0.5 * (h0 + h1));
        curv = std::max(curv, std::fabs(dd));
    }
    return span * h * h * curv / 12.0 + 1e-12 * (1.0 + scale);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count < 2) throw Error("linspace: count must be at least 2");
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i)
        pts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    pts.back() = hi;
    return pts;
}

}  // namespace pact
