#include "pact/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace pact {

using nlohmann::json;

namespace {

double need_number(const json& j, const std::string& path, const char* field) {
    if (!j.contains(field) || !j.at(field).is_number())
        throw ConfigError("missing or non-numeric parameter", path + "/" + field);
    return j.at(field).get<double>();
}

double number_or(const json& j, const char* field, double fallback) {
    return j.contains(field) ? j.at(field).get<double>() : fallback;
}

std::string need_string(const json& j, const std::string& path, const char* field) {
    if (!j.contains(field) || !j.at(field).is_string())
        throw ConfigError("missing or non-string parameter", path + "/" + field);
    return j.at(field).get<std::string>();
}

UtilityFn parse_utility(const json& j) {
    const std::string path = "/primitives/utility";
    const std::string kind = need_string(j, path, "kind");
    if (kind == "linear") return UtilityFn::linear();
    if (kind == "crra") return UtilityFn::crra(need_number(j, path, "gamma"));
    if (kind == "cara") return UtilityFn::cara(need_number(j, path, "alpha"));
    if (kind == "log_shifted") return UtilityFn::log_shifted(need_number(j, path, "shift"));
    throw ConfigError("unknown utility kind '" + kind + "'", path + "/kind");
}

KernelFn parse_kernel(const json& j) {
    const std::string path = "/primitives/kernel";
    const std::string kind = need_string(j, path, "kind");
    if (kind == "power")
        return KernelFn::power(number_or(j, "scale", 1.0), need_number(j, path, "exponent"),
                               number_or(j, "shift", 0.0));
    if (kind == "affine")
        return KernelFn::affine(need_number(j, path, "slope"), number_or(j, "intercept", 0.0));
    if (kind == "exp")
        return KernelFn::exponential(number_or(j, "scale", 1.0), need_number(j, path, "rate"),
                                     number_or(j, "shift", 0.0));
    if (kind == "table") {
        if (!j.contains("x") || !j.contains("z")) throw ConfigError("table kernel needs x and z arrays", path);
        return KernelFn::table(j.at("x").get<std::vector<double>>(), j.at("z").get<std::vector<double>>());
    }
    throw ConfigError("unknown kernel kind '" + kind + "'", path + "/kind");
}

OuterFn parse_outer(const json& j) {
    const std::string path = "/primitives/outer";
    const std::string kind = need_string(j, path, "kind");
    if (kind == "identity") return OuterFn::identity();
    if (kind == "power")
        return OuterFn::power(need_number(j, path, "exponent"), number_or(j, "scale", 1.0));
    if (kind == "exp")
        return OuterFn::exponential(need_number(j, path, "rate"), number_or(j, "scale", 1.0));
    throw ConfigError("unknown outer kind '" + kind + "'", path + "/kind");
}

TypeDistribution parse_type_dist(const json& j, double lo, double hi) {
    const std::string path = "/primitives/type_distribution";
    const std::string kind = need_string(j, path, "kind");
    if (kind == "uniform") return TypeDistribution::uniform(lo, hi);
    if (kind == "beta")
        return TypeDistribution::beta(need_number(j, path, "a"), need_number(j, path, "b"), lo, hi);
    if (kind == "table") {
        if (!j.contains("theta") || !j.contains("density"))
            throw ConfigError("table distribution needs theta and density arrays", path);
        return TypeDistribution::table(j.at("theta").get<std::vector<double>>(),
                                       j.at("density").get<std::vector<double>>());
    }
    throw ConfigError("unknown type distribution kind '" + kind + "'", path + "/kind");
}

std::vector<double> parse_grid_points(const json& j, const std::string& path,
                                      std::optional<std::size_t> count_override) {
    if (j.contains("points")) {
        auto pts = j.at("points").get<std::vector<double>>();
        if (pts.size() < 2) throw ConfigError("grid needs at least 2 points", path + "/points");
        return pts;
    }
    const double lo = need_number(j, path, "min");
    const double hi = need_number(j, path, "max");
    std::size_t count = count_override.value_or(
        static_cast<std::size_t>(need_number(j, path, "count")));
    if (count < 2) throw ConfigError("grid count must be >= 2", path + "/count");
    return linspace(lo, hi, count);
}

RunConfig parse_json(const json& root, const ConfigOverrides& overrides) {
    if (!root.contains("primitives")) throw ConfigError("missing block", "/primitives");
    if (!root.contains("grids")) throw ConfigError("missing block", "/grids");
    const json& prim = root.at("primitives");
    const json& grids = root.at("grids");

    if (!prim.contains("utility")) throw ConfigError("missing block", "/primitives/utility");
    if (!prim.contains("kernel")) throw ConfigError("missing block", "/primitives/kernel");
    if (!prim.contains("type_distribution"))
        throw ConfigError("missing block", "/primitives/type_distribution");
    if (!grids.contains("output")) throw ConfigError("missing block", "/grids/output");
    if (!grids.contains("type")) throw ConfigError("missing block", "/grids/type");

    UtilityFn u = parse_utility(prim.at("utility"));
    KernelFn z = parse_kernel(prim.at("kernel"));

    const std::string family = prim.contains("cost_family")
                                   ? prim.at("cost_family").get<std::string>()
                                   : std::string("composite");
    OutputGrid output_grid(parse_grid_points(grids.at("output"), "/grids/output", overrides.output_count));
    TypeGrid type_grid(parse_grid_points(grids.at("type"), "/grids/type", overrides.type_count));

    CostModel model = [&]() {
        if (family == "linear") return CostModel::linear(std::move(z), std::move(output_grid));
        if (family == "composite") {
            OuterFn K = prim.contains("outer") ? parse_outer(prim.at("outer")) : OuterFn::identity();
            return CostModel::composite(std::move(z), std::move(K), std::move(output_grid));
        }
        throw ConfigError("unknown cost family '" + family + "'", "/primitives/cost_family");
    }();

    TypeDistribution F =
        parse_type_dist(prim.at("type_distribution"), type_grid.lower(), type_grid.upper());

    RunConfig cfg(std::move(model), std::move(type_grid), std::move(F));
    cfg.utility = u;

    if (root.contains("solver")) {
        const json& s = root.at("solver");
        if (s.contains("pipeline")) {
            const std::string p = s.at("pipeline").get<std::string>();
            if (p == "degenerate")
                cfg.pipeline = Pipeline::degenerate;
            else if (p == "binary")
                cfg.pipeline = Pipeline::binary;
            else
                throw ConfigError("unknown pipeline '" + p + "'", "/solver/pipeline");
        }
        cfg.solver.v_lower = number_or(s, "v_lower", 0.0);
        if (s.contains("wage_mode")) {
            const std::string mode = s.at("wage_mode").get<std::string>();
            if (mode == "equality-everywhere")
                cfg.solver.wage_mode = WageMode::equality_everywhere;
            else if (mode == "punish-off-support")
                cfg.solver.wage_mode = WageMode::punish_off_support;
            else
                throw ConfigError("unknown wage mode '" + mode + "'", "/solver/wage_mode");
        }
        if (s.contains("monotonize_wages")) cfg.solver.monotonize_wages = s.at("monotonize_wages").get<bool>();
        if (s.contains("tolerances")) {
            const json& t = s.at("tolerances");
            cfg.solver.bisection_tol = number_or(t, "bisection", cfg.solver.bisection_tol);
            cfg.verify.obedience = number_or(t, "obedience", cfg.verify.obedience);
            cfg.verify.brute_force = number_or(t, "brute_force", cfg.verify.brute_force);
            for (double v : {cfg.solver.bisection_tol, cfg.verify.obedience, cfg.verify.brute_force})
                if (!(v > 0.0)) throw ConfigError("tolerances must be positive", "/solver/tolerances");
        }
    }

    cfg.seed = overrides.seed.value_or(
        root.contains("seed") ? root.at("seed").get<std::uint64_t>() : 0);
    cfg.solver.seed = cfg.seed;

    if (root.contains("output")) {
        const json& o = root.at("output");
        if (o.contains("mechanism_path")) cfg.mechanism_path = o.at("mechanism_path").get<std::string>();
        if (o.contains("report_path")) cfg.report_path = o.at("report_path").get<std::string>();
        if (o.contains("csv_path")) cfg.csv_path = o.at("csv_path").get<std::string>();
    }

    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        SweepSpec sweep;
        sweep.parameter = need_string(s, "/sweep", "parameter");
        if (s.contains("values")) {
            sweep.values = s.at("values").get<std::vector<double>>();
        } else {
            const double from = need_number(s, "/sweep", "from");
            const double to = need_number(s, "/sweep", "to");
            const auto count = static_cast<std::size_t>(need_number(s, "/sweep", "count"));
            if (count == 0) throw ConfigError("sweep range is empty", "/sweep/count");
            if (count == 1)
                sweep.values = {from};
            else
                sweep.values = linspace(from, to, count);
        }
        if (sweep.values.empty()) throw ConfigError("sweep range is empty", "/sweep/values");
        cfg.sweep = std::move(sweep);
    }
    return cfg;
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text, const ConfigOverrides& overrides) {
    json root;
    try {
        root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_json(root, overrides);
}

RunConfig parse_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_text(text, overrides);
}

RunConfig parse_config_text_with_override(const std::string& json_text, const std::string& json_pointer,
                                          double value, const ConfigOverrides& overrides) {
    json root;
    try {
        root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
        root[json::json_pointer(json_pointer)] = value;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_json(root, overrides);
}

}  // namespace pact
