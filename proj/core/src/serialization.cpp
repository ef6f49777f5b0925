#include "pact/serialization.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace pact {

using nlohmann::json;

std::string mechanism_to_json(const Mechanism& mech) {
    json j;
    j["output_grid"] = std::vector<double>(mech.output_grid().points().begin(),
                                           mech.output_grid().points().end());
    j["type_grid"] =
        std::vector<double>(mech.type_grid().points().begin(), mech.type_grid().points().end());
    json types = json::array();
    for (std::size_t k = 0; k < mech.num_types(); ++k) {
        json entry;
        entry["wage"] = std::vector<double>(mech.wage(k).values().begin(), mech.wage(k).values().end());
        entry["recommendation"] =
            std::vector<double>(mech.recommendation(k).masses().begin(), mech.recommendation(k).masses().end());
        entry["promised_utility"] = mech.promised_utility(k);
        types.push_back(std::move(entry));
    }
    j["types"] = std::move(types);
    return j.dump(2) + "\n";
}

Mechanism mechanism_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("mechanism parse error: ") + e.what());
    }
    try {
        OutputGrid out(j.at("output_grid").get<std::vector<double>>());
        TypeGrid types(j.at("type_grid").get<std::vector<double>>());
        std::vector<WageSchedule> wages;
        std::vector<Dist> recs;
        std::vector<double> promised;
        for (const auto& entry : j.at("types")) {
            wages.emplace_back(entry.at("wage").get<std::vector<double>>());
            recs.emplace_back(entry.at("recommendation").get<std::vector<double>>());
            promised.push_back(entry.at("promised_utility").get<double>());
        }
        return Mechanism(std::move(out), std::move(types), std::move(wages), std::move(recs),
                         std::move(promised));
    } catch (const json::exception& e) {
        throw Error(std::string("mechanism file shape error: ") + e.what());
    }
}

void save_mechanism(const Mechanism& mech, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << mechanism_to_json(mech);
}

Mechanism load_mechanism(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mechanism file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return mechanism_from_json(text);
}

std::string report_to_json(const ICReport& report, const VerifyTolerances& tol) {
    json j;
    j["envelope"] = {{"residuals", report.envelope_residuals},
                     {"tolerance", report.envelope_tolerance},
                     {"verdict", to_string(report.envelope_verdict)}};
    json mono = {{"min_integral", report.monotonicity_min},
                 {"tolerance", report.monotonicity_tolerance},
                 {"verdict", to_string(report.monotonicity_verdict)}};
    if (report.has_selection_range) {
        mono["min_integral_low_selection"] = report.monotonicity_min_low_selection;
        mono["min_integral_high_selection"] = report.monotonicity_min_high_selection;
    }
    j["generalized_monotonicity"] = std::move(mono);
    j["on_path_obedience"] = {{"worst_inequality", report.on_path_inequality},
                              {"support_residual", report.on_path_support_residual},
                              {"tolerance", tol.obedience},
                              {"verdict", to_string(report.on_path_verdict)}};
    j["off_path_obedience"] = {{"gap", report.off_path_gap},
                               {"worst", report.off_path_worst},
                               {"tolerance", tol.obedience},
                               {"verdict", to_string(report.off_path_verdict)}};
    j["brute_force"] = {{"worst_gain", report.brute_force_worst},
                        {"tolerance", tol.brute_force},
                        {"verdict", to_string(report.brute_force_verdict(tol))}};
    j["verdict"] = to_string(report.four_condition_verdict());
    return j.dump(2) + "\n";
}

}  // namespace pact
