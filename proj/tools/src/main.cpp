#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pact: solver and verifier for screening contracts with flexible hidden actions"};
    app.require_subcommand(1);

    std::string config;
    std::string mechanism;
    std::string out_path;
    std::string report_path;
    std::string transform_kind;
    std::string wages_csv;
    double theta = 0.5;
    double report_theta = 0.0;
    bool report_theta_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t grid_n = 0, type_n = 0;

    const auto overrides = [&]() {
        pact::ConfigOverrides o;
        if (grid_n > 0) o.output_count = grid_n;
        if (type_n > 0) o.type_count = type_n;
        if (seed_set) o.seed = seed;
        return o;
    };
    const auto opt_path = [](const std::string& s) {
        return s.empty() ? std::optional<std::filesystem::path>{} : std::optional<std::filesystem::path>{s};
    };

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* c = cmd->add_option("--config", config, "configuration file (JSON)");
        if (needs_config) c->required();
        cmd->add_option("--seed", seed, "seed for all randomized components")->each([&](const std::string&) {
            seed_set = true;
        });
        cmd->add_option("--grid-n", grid_n, "override output grid count");
        cmd->add_option("--type-n", type_n, "override type grid count");
    };

    auto* solve = app.add_subcommand("solve", "solve the configured pipeline and write a mechanism file");
    add_common(solve, true);
    solve->add_option("--out", out_path, "mechanism output path");

    auto* verify = app.add_subcommand("verify", "verify incentive compatibility of a mechanism file");
    add_common(verify, true);
    verify->add_option("--mechanism", mechanism, "mechanism file")->required();
    verify->add_option("--out", report_path, "report output path (JSON)");

    auto* sweep = app.add_subcommand("sweep", "comparative statics over a swept parameter (CSV)");
    add_common(sweep, true);
    sweep->add_option("--out", out_path, "CSV output path");

    auto* br = app.add_subcommand("best-response", "agent best response for a single (theta, wage) query");
    add_common(br, true);
    br->add_option("--theta", theta, "agent type")->required();
    br->add_option("--mechanism", mechanism, "mechanism file supplying the wage");
    br->add_option("--report", report_theta, "reported type selecting the wage from the mechanism")
        ->each([&](const std::string&) { report_theta_set = true; });
    br->add_option("--wages", wages_csv, "comma-separated wage per output grid point");

    auto* transform = app.add_subcommand("transform", "apply monotonize | degenerate | binary to a mechanism");
    add_common(transform, true);
    transform->add_option("kind", transform_kind, "monotonize | degenerate | binary")->required();
    transform->add_option("--mechanism", mechanism, "mechanism file")->required();
    transform->add_option("--out", out_path, "output mechanism path");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed())
        return pact::cli::cmd_solve(config, overrides(), opt_path(out_path), std::cout, std::cerr);
    if (verify->parsed())
        return pact::cli::cmd_verify(mechanism, config, opt_path(report_path), std::cout, std::cerr);
    if (sweep->parsed())
        return pact::cli::cmd_sweep(config, overrides(), opt_path(out_path), std::cout, std::cerr);
    if (br->parsed()) {
        std::vector<double> wages;
        if (!wages_csv.empty()) {
            std::size_t pos = 0;
            while (pos < wages_csv.size()) {
                std::size_t next = wages_csv.find(',', pos);
                if (next == std::string::npos) next = wages_csv.size();
                wages.push_back(std::stod(wages_csv.substr(pos, next - pos)));
                pos = next + 1;
            }
        }
        return pact::cli::cmd_best_response(
            config, theta, opt_path(mechanism),
            report_theta_set ? std::optional<double>(report_theta) : std::nullopt, wages, overrides(),
            std::cout, std::cerr);
    }
    if (transform->parsed())
        return pact::cli::cmd_transform(transform_kind, mechanism, config, opt_path(out_path), std::cout,
                                        std::cerr);
    return 1;
}
