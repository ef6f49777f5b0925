#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pact/cost_model.hpp"
#include "pact/grids.hpp"
#include "pact/solver.hpp"
#include "pact/type_distribution.hpp"

namespace pact {

enum class Pipeline { degenerate, binary };

struct SweepSpec {
    std::string parameter;            // JSON pointer into the config, e.g. "/primitives/outer/exponent"
    std::vector<double> values;       // explicit list, or generated from from/to/count
};

/// Fully parsed run configuration: primitives, grids, solver options, and
/// output paths. Construction validates every referenced kind and value.
struct RunConfig {
    UtilityFn utility = UtilityFn::linear();
    CostModel model;                  // kernel/outer bound to the output grid
    TypeGrid type_grid;
    TypeDistribution type_dist;
    Pipeline pipeline = Pipeline::degenerate;
    SolverOptions solver;
    VerifyTolerances verify;
    std::uint64_t seed = 0;

    std::optional<std::string> mechanism_path;
    std::optional<std::string> report_path;
    std::optional<std::string> csv_path;
    std::optional<SweepSpec> sweep;

    RunConfig(CostModel m, TypeGrid tg, TypeDistribution td)
        : model(std::move(m)), type_grid(std::move(tg)), type_dist(std::move(td)) {}
};

struct ConfigOverrides {
    std::optional<std::size_t> output_count;  // --grid-n
    std::optional<std::size_t> type_count;    // --type-n
    std::optional<std::uint64_t> seed;        // --seed
};

/// Parse a configuration file. Throws ConfigError naming the offending field.
RunConfig parse_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});
RunConfig parse_config_text(const std::string& json_text, const ConfigOverrides& overrides = {});

/// Sweep support: re-parse the config with the swept parameter replaced.
RunConfig parse_config_text_with_override(const std::string& json_text, const std::string& json_pointer,
                                          double value, const ConfigOverrides& overrides = {});

}  // namespace pact
