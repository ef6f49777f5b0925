#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pact/serialization.hpp"

namespace pact::cli {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Rebind the configured cost primitives to the grids a mechanism file
// carries. Verification and transforms need no type distribution.
CostModel rebind_to_mechanism(const RunConfig& cfg, const Mechanism& mech) {
    return cfg.model.family() == CostFamily::linear
               ? CostModel::linear(cfg.model.kernel(), mech.output_grid())
               : CostModel::composite(cfg.model.kernel(), cfg.model.outer(), mech.output_grid());
}

SolveResult run_pipeline(const RunConfig& cfg) {
    return cfg.pipeline == Pipeline::degenerate
               ? solve_degenerate(cfg.model, cfg.type_dist, cfg.type_grid, cfg.utility, cfg.solver)
               : solve_binary(cfg.model, cfg.type_dist, cfg.type_grid, cfg.utility, cfg.solver);
}

std::size_t max_mass_index(const Dist& d) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < d.size(); ++i)
        if (d[i] > d[best]) best = i;
    return best;
}

void print_condition_lines(const ICReport& report, const VerifyTolerances& tol, std::ostream& out) {
    double env_worst = 0.0;
    for (double r : report.envelope_residuals) env_worst = std::max(env_worst, std::fabs(r));
    out << "envelope: " << to_string(report.envelope_verdict) << " (worst residual "
        << format_number(env_worst) << ", tol " << format_number(report.envelope_tolerance) << ")\n";
    out << "generalized monotonicity: " << to_string(report.monotonicity_verdict) << " (min integral "
        << format_number(report.monotonicity_min) << ", tol "
        << format_number(report.monotonicity_tolerance) << ")\n";
    double on_worst = 0.0;
    for (std::size_t j = 0; j < report.on_path_inequality.size(); ++j)
        on_worst = std::max({on_worst, report.on_path_inequality[j], report.on_path_support_residual[j]});
    out << "on-path obedience: " << to_string(report.on_path_verdict) << " (worst residual "
        << format_number(on_worst) << ", tol " << format_number(tol.obedience) << ")\n";
    out << "off-path obedience: " << to_string(report.off_path_verdict) << " (worst gap "
        << format_number(report.off_path_worst) << ", tol " << format_number(tol.obedience) << ")\n";
    out << "brute force: " << to_string(report.brute_force_verdict(tol)) << " (worst gain "
        << format_number(report.brute_force_worst) << ", tol " << format_number(tol.brute_force)
        << ")\n";
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int cmd_solve(const std::filesystem::path& config_path, const ConfigOverrides& overrides,
              const std::optional<std::filesystem::path>& out_override, std::ostream& out,
              std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(config_path, overrides);
        const SolveResult result = run_pipeline(cfg);

        const std::filesystem::path mech_path =
            out_override.value_or(std::filesystem::path(cfg.mechanism_path.value_or("mechanism.json")));
        save_mechanism(result.mechanism, mech_path);

        const bool binary = cfg.pipeline == Pipeline::binary;
        const auto& mech = result.mechanism;
        out << (binary ? "theta,p_theta,wage_gap,promised_utility\n"
                       : "theta,x_theta,wage_at_x,promised_utility\n");
        for (std::size_t j = 0; j < mech.num_types(); ++j) {
            const double theta = mech.type_grid()[j];
            double alloc, wage_col;
            if (binary) {
                alloc = result.solved_p[j];
                wage_col = mech.wage(j)[mech.output_grid().size() - 1] - mech.wage(j)[0];
            } else {
                const std::size_t k = max_mass_index(mech.recommendation(j));
                alloc = mech.output_grid()[k];
                wage_col = mech.wage(j)[k];
            }
            out << format_number(theta) << ',' << format_number(alloc) << ',' << format_number(wage_col)
                << ',' << format_number(mech.promised_utility(j)) << '\n';
        }
        out << "revenue: " << format_number(result.revenue.direct);
        if (result.revenue.virtual_form)
            out << " (virtual form " << format_number(*result.revenue.virtual_form) << ")";
        out << "\nmechanism written to " << mech_path.string() << "\n";

        if (!result.regularity.regular() || !result.allocation_monotone) {
            out << "warning: "
                << (!result.regularity.regular() ? "virtual value is not monotone"
                                                 : "allocation is not monotone")
                << "; pointwise solution may not be incentive compatible\n";
            if (result.ic_report)
                out << "verdict: " << to_string(result.ic_report->four_condition_verdict()) << "\n";
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify(const std::filesystem::path& mechanism_path, const std::filesystem::path& config_path,
               const std::optional<std::filesystem::path>& report_override, std::ostream& out,
               std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(config_path);
        const Mechanism mech = load_mechanism(mechanism_path);
        const CostModel bound = rebind_to_mechanism(cfg, mech);
        const GenSchedule sched = populate_schedule(mech, bound, cfg.utility);
        const ICReport report = verify_mechanism(mech, sched, bound, cfg.utility, cfg.verify);

        print_condition_lines(report, cfg.verify, out);
        const std::optional<std::string> report_path =
            report_override ? std::optional<std::string>(report_override->string()) : cfg.report_path;
        if (report_path) {
            std::ofstream rf(*report_path);
            if (!rf) throw Error("cannot open report path: " + *report_path);
            rf << report_to_json(report, cfg.verify);
        }

        const ICVerdict verdict = report.four_condition_verdict();
        if (verdict == ICVerdict::ic) {
            out << "verdict: IC\n";
            return 0;
        }
        if (verdict == ICVerdict::indeterminate) {
            out << "verdict: INDETERMINATE\n";
            return 3;
        }
        out << "verdict: NOT-IC (" << report.first_failing_condition() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

int cmd_sweep(const std::filesystem::path& config_path, const ConfigOverrides& overrides,
              const std::optional<std::filesystem::path>& csv_override, std::ostream& out,
              std::ostream& err) {
    try {
        const std::string text = read_file(config_path);
        const RunConfig base = parse_config_text(text, overrides);
        if (!base.sweep) throw ConfigError("missing block", "/sweep");

        std::ostringstream csv;
        const bool binary = base.pipeline == Pipeline::binary;
        csv << "parameter,theta," << (binary ? "p_theta" : "x_theta") << ",wage_gap,revenue\n";
        for (double value : base.sweep->values) {
            const RunConfig cfg =
                parse_config_text_with_override(text, base.sweep->parameter, value, overrides);
            const SolveResult result = run_pipeline(cfg);
            const auto& mech = result.mechanism;
            for (std::size_t j = 0; j < mech.num_types(); ++j) {
                const double alloc = binary
                                         ? result.solved_p[j]
                                         : mech.output_grid()[max_mass_index(mech.recommendation(j))];
                const double gap =
                    mech.wage(j)[mech.output_grid().size() - 1] - mech.wage(j)[0];
                csv << format_number(value) << ',' << format_number(mech.type_grid()[j]) << ','
                    << format_number(alloc) << ',' << format_number(gap) << ','
                    << format_number(result.revenue.direct) << '\n';
            }
        }

        const std::optional<std::string> csv_path =
            csv_override ? std::optional<std::string>(csv_override->string()) : base.csv_path;
        if (csv_path) {
            std::ofstream f(*csv_path);
            if (!f) throw Error("cannot open csv path: " + *csv_path);
            f << csv.str();
            out << "sweep written to " << *csv_path << "\n";
        } else {
            out << csv.str();
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_best_response(const std::filesystem::path& config_path, double theta,
                      const std::optional<std::filesystem::path>& mechanism_path,
                      std::optional<double> report_theta, const std::vector<double>& inline_wages,
                      const ConfigOverrides& overrides, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(config_path, overrides);

        std::optional<WageSchedule> wage;
        const CostModel* model = &cfg.model;
        std::optional<CostModel> bound;
        if (mechanism_path) {
            const Mechanism mech = load_mechanism(*mechanism_path);
            bound = rebind_to_mechanism(cfg, mech);
            model = &*bound;
            if (!report_theta) throw Error("--report <theta> required with --mechanism");
            std::size_t j = 0;
            double best_gap = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < mech.num_types(); ++k) {
                const double gap = std::fabs(mech.type_grid()[k] - *report_theta);
                if (gap < best_gap) {
                    best_gap = gap;
                    j = k;
                }
            }
            wage = mech.wage(j);
        } else {
            if (inline_wages.size() != cfg.model.grid().size())
                throw Error("--wages must list one payment per output grid point");
            wage = WageSchedule(inline_wages);
        }

        const BestResponse br = best_response(*wage, theta, *model, cfg.utility);
        const BestResponse oracle =
            best_response_oracle(*wage, theta, *model, cfg.utility, 20001, cfg.seed);

        out << "value: " << format_number(br.value) << "\n";
        out << "mean_kernel: " << format_number(br.mean_kernel) << "\n";
        out << "argmax:";
        for (double m : br.argmax_dist.masses()) out << ' ' << format_number(m);
        out << "\n";
        if (!br.tie_set.empty()) {
            out << "tie_set:";
            for (std::size_t i : br.tie_set) out << ' ' << i;
            out << "\n";
        }
        out << "oracle_value: " << format_number(oracle.value) << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_transform(const std::string& kind, const std::filesystem::path& mechanism_path,
                  const std::filesystem::path& config_path,
                  const std::optional<std::filesystem::path>& out_override, std::ostream& out,
                  std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(config_path);
        const Mechanism mech = load_mechanism(mechanism_path);
        const CostModel bound = rebind_to_mechanism(cfg, mech);

        Mechanism transformed = mech;
        if (kind == "monotonize") {
            for (std::size_t j = 0; j < mech.num_types(); ++j)
                transformed = transformed.with_wage(j, monotonize(mech.wage(j)));
        } else if (kind == "degenerate") {
            const GenSchedule sched = populate_schedule(mech, bound, cfg.utility);
            transformed = degenerate_transform(mech, sched, bound, cfg.utility);
        } else if (kind == "binary") {
            const GenSchedule sched = populate_schedule(mech, bound, cfg.utility);
            BinaryTransformResult r = binary_transform(mech, sched, bound, cfg.utility);
            if (!r.a_monotone)
                out << "warning: marginal-cost path is not increasing; monotonicity may fail\n";
            transformed = std::move(r.mechanism);
        } else {
            throw Error("unknown transform kind '" + kind + "' (monotonize | degenerate | binary)");
        }

        const std::filesystem::path out_path = out_override.value_or(
            std::filesystem::path(cfg.mechanism_path.value_or("mechanism_transformed.json")));
        save_mechanism(transformed, out_path);
        out << "transformed mechanism written to " << out_path.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pact::cli
