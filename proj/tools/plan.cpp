// plan: wavelength assignment for DWDM links shared by QKD and classical
// channels. Subcommands mirror the planning workflows: optimize a scenario,
// chart assignment patterns, sweep the rate enhancement, find the classical
// channel ceiling, compare solvers, and dump the rate-vs-noise curve.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qkdwdm/qkdwdm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;

struct CommonArgs {
    std::string scenario_path;
    std::string raman_path;
    std::string format = "text";
    std::string out_path;
    std::uint64_t budget = 100000000ULL;
    std::optional<double> r_th_override;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "Scenario document (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--raman", args.raman_path,
                    "Raman cross-section CSV (default: built-in synthetic table)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", args.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", args.out_path, "Write the report here instead of stdout");
    cmd->add_option("--budget", args.budget, "Candidate budget for exhaustive searches")
        ->capture_default_str();
    cmd->add_option("--rth", args.r_th_override,
                    "Override the scenario's per-channel rate floor (bit/s)");
}

qkdwdm::SystemContext load_context(const CommonArgs& args) {
    qkdwdm::ScenarioFile file = qkdwdm::load_scenario_file(args.scenario_path);
    if (args.r_th_override) file.scenario.r_th = *args.r_th_override;
    std::optional<qkdwdm::RamanCrossSectionTable> raman;
    if (!args.raman_path.empty()) raman = qkdwdm::load_raman_file(args.raman_path);
    return qkdwdm::make_context(file, std::move(raman));
}

qkdwdm::OutputFormat parse_format(const std::string& f) {
    if (f == "csv") return qkdwdm::OutputFormat::Csv;
    if (f == "json") return qkdwdm::OutputFormat::Json;
    return qkdwdm::OutputFormat::Text;
}

int emit(const qkdwdm::Report& report, const CommonArgs& args) {
    const std::string rendered = qkdwdm::render(report, parse_format(args.format));
    if (args.out_path.empty()) {
        std::cout << rendered;
        return kExitOk;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << args.out_path << "'\n";
        return kExitUsage;
    }
    out << rendered;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelength planner for hybrid quantum-classical DWDM links"};
    app.require_subcommand(1);

    CommonArgs optimize_args, pattern_args, sweep_args, nmax_args, compare_args, curve_args;
    CLI::App* cmd_optimize =
        app.add_subcommand("optimize", "Best wavelength plan for the scenario");
    add_common(cmd_optimize, optimize_args);
    CLI::App* cmd_pattern =
        app.add_subcommand("pattern", "Assignment patterns for N = 1..n_classical");
    add_common(cmd_pattern, pattern_args);
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep-re", "Rate enhancement over the conventional layout");
    add_common(cmd_sweep, sweep_args);
    CLI::App* cmd_nmax =
        app.add_subcommand("nmax", "Largest classical channel count with all-positive rates");
    add_common(cmd_nmax, nmax_args);
    CLI::App* cmd_compare =
        app.add_subcommand("compare", "Optimal vs near-optimal vs conventional totals per M");
    add_common(cmd_compare, compare_args);
    CLI::App* cmd_curve = app.add_subcommand("rate-curve", "Exact and linearized rate vs noise");
    add_common(cmd_curve, curve_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_optimize->parsed()) {
            const qkdwdm::SystemContext ctx = load_context(optimize_args);
            const std::optional<qkdwdm::PlanResult> plan = qkdwdm::optimize(ctx);
            if (!plan) {
                std::cerr << "infeasible: no assignment meets the per-channel rate floor of "
                          << qkdwdm::format_sci(ctx.scenario.r_th) << " bit/s\n";
                return kExitInfeasible;
            }
            const int rc = emit(qkdwdm::plan_report(*plan, ctx), optimize_args);
            if (rc != kExitOk) return rc;
            return plan->feasible ? kExitOk : kExitInfeasible;
        }
        if (cmd_pattern->parsed()) {
            const qkdwdm::SystemContext ctx = load_context(pattern_args);
            return emit(qkdwdm::pattern_report(ctx), pattern_args);
        }
        if (cmd_sweep->parsed()) {
            const qkdwdm::SystemContext ctx = load_context(sweep_args);
            return emit(qkdwdm::sweep_report(qkdwdm::sweep_re(ctx)), sweep_args);
        }
        if (cmd_nmax->parsed()) {
            const qkdwdm::SystemContext ctx = load_context(nmax_args);
            const qkdwdm::NMaxResult result = qkdwdm::n_max(ctx, ctx.scenario.m_quantum);
            return emit(qkdwdm::n_max_report(result, ctx.scenario.m_quantum), nmax_args);
        }
        if (cmd_compare->parsed()) {
            const qkdwdm::SystemContext ctx = load_context(compare_args);
            const qkdwdm::CompareResult result = qkdwdm::compare_methods(ctx, compare_args.budget);
            const int rc = emit(qkdwdm::compare_report(result), compare_args);
            if (rc != kExitOk) return rc;
            bool refused = false;
            for (const auto& row : result.rows) refused = refused || row.budget_refused;
            return refused ? kExitBudget : kExitOk;
        }
        if (cmd_curve->parsed()) {
            const qkdwdm::SystemContext ctx = load_context(curve_args);
            return emit(qkdwdm::rate_curve_report(qkdwdm::rate_curve(ctx)), curve_args);
        }
    } catch (const qkdwdm::BudgetError& e) {
        std::cerr << "budget refusal: " << e.what() << " (" << qkdwdm::format_sci(e.candidates)
                  << " candidates vs budget " << qkdwdm::format_sci(e.budget) << ")\n";
        return kExitBudget;
    } catch (const qkdwdm::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const qkdwdm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
