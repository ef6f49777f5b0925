#include "pact/outer.hpp"

#include <cmath>

namespace pact {

OuterFn OuterFn::identity() { return OuterFn(OuterKind::identity, 0.0, 1.0); }

OuterFn OuterFn::power(double exponent, double scale) {
    if (!(exponent >= 1.0)) throw Error("OuterFn::power: exponent must be >= 1");
    if (!(scale > 0.0)) throw Error("OuterFn::power: scale must be positive");
    return OuterFn(OuterKind::power, exponent, scale);
}

OuterFn OuterFn::exponential(double rate, double scale) {
    if (!(rate > 0.0)) throw Error("OuterFn::exponential: rate must be positive");
    if (!(scale > 0.0)) throw Error("OuterFn::exponential: scale must be positive");
    return OuterFn(OuterKind::exponential, rate, scale);
}

double OuterFn::value(double m) const {
    switch (kind_) {
        case OuterKind::identity: return m;
        case OuterKind::power:
            if (!(m >= 0.0)) throw DomainError("OuterFn::power: mean kernel value below 0");
            return p1_ * std::pow(m, p0_);
        case OuterKind::exponential: return p1_ * (std::exp(p0_ * m) - 1.0) / p0_;
    }
    return 0.0;
}

double OuterFn::d1(double m) const {
    switch (kind_) {
        case OuterKind::identity: return 1.0;
        case OuterKind::power:
            if (!(m >= 0.0)) throw DomainError("OuterFn::power: mean kernel value below 0");
            return p1_ * p0_ * std::pow(m, p0_ - 1.0);
        case OuterKind::exponential: return p1_ * std::exp(p0_ * m);
    }
    return 0.0;
}

bool OuterFn::strictly_convex() const {
    switch (kind_) {
        case OuterKind::identity: return false;
        case OuterKind::power: return p0_ > 1.0;
        case OuterKind::exponential: return true;
    }
    return false;
}

void OuterFn::require_convex_increasing_on(double lo, double hi) const {
    // K'(lo) = 0 is admitted (power kinds at a zero kernel); strict increase
    // overall is enforced through K'(hi) > 0.
    constexpr int kProbes = 33;
    double prev = 0.0;
    double d = 0.0;
    for (int k = 0; k < kProbes; ++k) {
        const double m = lo + (hi - lo) * k / (kProbes - 1);
        d = d1(m);
        if (!std::isfinite(d) || d < 0.0 || (k > 0 && d < prev - 1e-12))
            throw Error("OuterFn: K' must be nonnegative and nondecreasing on the kernel range");
        prev = d;
    }
    if (!(d > 0.0)) throw Error("OuterFn: K must be strictly increasing on the kernel range");
}

std::string OuterFn::name() const {
    switch (kind_) {
        case OuterKind::identity: return "identity";
        case OuterKind::power: return "power";
        case OuterKind::exponential: return "exp";
    }
    return "?";
}

}  // namespace pact
