#include "pact/utility.hpp"

#include <cmath>

namespace pact {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

UtilityFn UtilityFn::linear() { return UtilityFn(UtilityKind::linear, 0.0); }

UtilityFn UtilityFn::crra(double gamma) {
    if (!(gamma > 0.0) || gamma == 1.0)
        throw Error("UtilityFn::crra: gamma must be positive and != 1 (use log_shifted for the log case)");
    return UtilityFn(UtilityKind::crra, gamma);
}

UtilityFn UtilityFn::cara(double alpha) {
    if (!(alpha > 0.0)) throw Error("UtilityFn::cara: alpha must be positive");
    return UtilityFn(UtilityKind::cara, alpha);
}

UtilityFn UtilityFn::log_shifted(double shift) {
    if (!std::isfinite(shift)) throw Error("UtilityFn::log_shifted: shift must be finite");
    return UtilityFn(UtilityKind::log_shifted, shift);
}

double UtilityFn::value(double w) const {
    switch (kind_) {
        case UtilityKind::linear: return w;
        case UtilityKind::crra: {
            if (!(w >= 0.0)) throw DomainError("crra utility: wage below 0");
            if (param_ > 1.0 && w == 0.0) throw DomainError("crra utility: wage must be positive");
            return (std::pow(w, 1.0 - param_) - 1.0) / (1.0 - param_);
        }
        case UtilityKind::cara: return (1.0 - std::exp(-param_ * w)) / param_;
        case UtilityKind::log_shifted: {
            if (!(w > -param_)) throw DomainError("log utility: wage + shift must be positive");
            return std::log(w + param_);
        }
    }
    return 0.0;
}

double UtilityFn::d1(double w) const {
    switch (kind_) {
        case UtilityKind::linear: return 1.0;
        case UtilityKind::crra: return std::pow(w, -param_);
        case UtilityKind::cara: return std::exp(-param_ * w);
        case UtilityKind::log_shifted: return 1.0 / (w + param_);
    }
    return 0.0;
}

double UtilityFn::d2(double w) const {
    switch (kind_) {
        case UtilityKind::linear: return 0.0;
        case UtilityKind::crra: return -param_ * std::pow(w, -param_ - 1.0);
        case UtilityKind::cara: return -param_ * std::exp(-param_ * w);
        case UtilityKind::log_shifted: return -1.0 / ((w + param_) * (w + param_));
    }
    return 0.0;
}

bool UtilityFn::inverse_in_range(double v) const {
    switch (kind_) {
        case UtilityKind::linear: return std::isfinite(v);
        case UtilityKind::crra: return std::isfinite(v) && 1.0 + (1.0 - param_) * v > 0.0;
        case UtilityKind::cara: return std::isfinite(v) && v < 1.0 / param_;
        case UtilityKind::log_shifted: return std::isfinite(v);
    }
    return false;
}

double UtilityFn::inverse(double v) const {
    if (!inverse_in_range(v)) throw DomainError("utility inverse: value outside the range of u");
    switch (kind_) {
        case UtilityKind::linear: return v;
        case UtilityKind::crra: return std::pow(1.0 + (1.0 - param_) * v, 1.0 / (1.0 - param_));
        case UtilityKind::cara: return -std::log(1.0 - param_ * v) / param_;
        case UtilityKind::log_shifted: return std::exp(v) - param_;
    }
    return 0.0;
}

double UtilityFn::domain_lower() const {
    switch (kind_) {
        case UtilityKind::linear:
        case UtilityKind::cara: return -kInf;
        case UtilityKind::crra: return 0.0;
        case UtilityKind::log_shifted: return -param_;
    }
    return -kInf;
}

bool UtilityFn::in_domain(double w) const {
    if (!std::isfinite(w)) return false;
    switch (kind_) {
        case UtilityKind::linear:
        case UtilityKind::cara: return true;
        case UtilityKind::crra: return param_ > 1.0 ? w > 0.0 : w >= 0.0;
        case UtilityKind::log_shifted: return w > -param_;
    }
    return false;
}

std::string UtilityFn::name() const {
    switch (kind_) {
        case UtilityKind::linear: return "linear";
        case UtilityKind::crra: return "crra";
        case UtilityKind::cara: return "cara";
        case UtilityKind::log_shifted: return "log_shifted";
    }
    return "?";
}

}  // namespace pact
