#pragma once

#include <filesystem>
#include <string>

#include "pact/ic_verify.hpp"
#include "pact/mechanism.hpp"

namespace pact {

/// Structured text (JSON) encoding of a mechanism: the two grids plus, per
/// type, the wage array, recommendation array, and promised utility. Decimal
/// literals round-trip bit-exactly.
std::string mechanism_to_json(const Mechanism& mech);
Mechanism mechanism_from_json(const std::string& text);

void save_mechanism(const Mechanism& mech, const std::filesystem::path& path);
Mechanism load_mechanism(const std::filesystem::path& path);

/// Structured text encoding of a verification report.
std::string report_to_json(const ICReport& report, const VerifyTolerances& tol);

}  // namespace pact
