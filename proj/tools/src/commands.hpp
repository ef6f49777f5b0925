#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pact/config.hpp"

namespace pact::cli {

/// Solve the configured pipeline; write the mechanism file and print a
/// per-type summary table. Exit 0 on success, 2 when the instance is
/// solved but flagged (irregular or non-monotone), 1 on error.
int cmd_solve(const std::filesystem::path& config_path, const ConfigOverrides& overrides,
              const std::optional<std::filesystem::path>& out_override, std::ostream& out,
              std::ostream& err);

/// Verify a serialized mechanism against the configured primitives.
/// Exit 0 iff IC; 1 when not IC (the failing condition is named); 3 when
/// indeterminate; 4 on file or shape errors.
int cmd_verify(const std::filesystem::path& mechanism_path, const std::filesystem::path& config_path,
               const std::optional<std::filesystem::path>& report_override, std::ostream& out,
               std::ostream& err);

/// Re-solve across the swept parameter and emit CSV rows
/// (parameter, theta, allocation, wage gap, revenue). Exit 0/1.
int cmd_sweep(const std::filesystem::path& config_path, const ConfigOverrides& overrides,
              const std::optional<std::filesystem::path>& csv_override, std::ostream& out,
              std::ostream& err);

/// Single (theta, wage) agent query. The wage comes from a mechanism file
/// entry (--report selects the type) or an inline list. Exit 0/1.
int cmd_best_response(const std::filesystem::path& config_path, double theta,
                      const std::optional<std::filesystem::path>& mechanism_path,
                      std::optional<double> report_theta, const std::vector<double>& inline_wages,
                      const ConfigOverrides& overrides, std::ostream& out, std::ostream& err);

/// Apply a wage/recommendation transform (monotonize | degenerate | binary)
/// to a serialized mechanism. Exit 0/1.
int cmd_transform(const std::string& kind, const std::filesystem::path& mechanism_path,
                  const std::filesystem::path& config_path,
                  const std::optional<std::filesystem::path>& out_override, std::ostream& out,
                  std::ostream& err);

/// 12-significant-digit decimal formatting shared by CSV and tables.
std::string format_number(double v);

}  // namespace pact::cli
