// Command-line front end: run scenarios, sweep parameter grids, estimate
// critical parameters, and reproduce the bundled reference scenarios.
//
// Exit codes: 0 success, 2 validation/parse error, 3 threshold bracket does
// not straddle the crossing, 4 I/O error.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "resilnet/errors.hpp"
#include "resilnet/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates;
    std::string out_dir;
    bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Override the master seed");
    cmd->add_option("--replicates", flags.replicates, "Override the replicate count");
    cmd->add_option("--out", flags.out_dir, "Output directory (default: out/<name>)");
    cmd->add_flag("--quiet", flags.quiet, "Suppress progress output");
}

void apply_overrides(resilnet::Scenario& scenario, const CommonFlags& flags) {
    if (flags.seed) scenario.master_seed = *flags.seed;
    if (flags.replicates) scenario.replicates = *flags.replicates;
    if (!flags.out_dir.empty()) scenario.out_dir = flags.out_dir;
}

fs::path output_dir(const resilnet::Scenario& scenario) {
    if (!scenario.out_dir.empty()) return scenario.out_dir;
    return fs::path("out") / scenario.name;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIS epidemic simulator with risk-perception feedback and "
                 "resilience metrics"};
    app.require_subcommand(1);

    std::string scenario_path, sweep_path, threshold_path, figure_id;
    CommonFlags run_flags, sweep_flags, threshold_flags, reproduce_flags;

    CLI::App* cmd_run = app.add_subcommand("run", "Execute a scenario file");
    cmd_run->add_option("scenario-file", scenario_path, "Scenario document")->required();
    add_common_flags(cmd_run, run_flags);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Run a parameter grid sweep");
    cmd_sweep->add_option("sweep-file", sweep_path, "Sweep document")->required();
    add_common_flags(cmd_sweep, sweep_flags);

    CLI::App* cmd_threshold =
        app.add_subcommand("threshold", "Bisect for the 50% survival crossing");
    cmd_threshold->add_option("sweep-file", threshold_path, "Sweep document with a bracket")
        ->required();
    add_common_flags(cmd_threshold, threshold_flags);

    CLI::App* cmd_reproduce =
        app.add_subcommand("reproduce", "Run a bundled reference scenario");
    cmd_reproduce
        ->add_option("figure-id", figure_id, "One of fig2a, fig2b, fig3, fig4a, fig4b")
        ->required();
    add_common_flags(cmd_reproduce, reproduce_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);   // prints help or the parse message
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) {
            resilnet::Scenario scenario = resilnet::load_scenario_file(scenario_path);
            apply_overrides(scenario, run_flags);
            resilnet::execute_run(scenario, output_dir(scenario), run_flags.quiet);
        } else if (cmd_sweep->parsed()) {
            resilnet::SweepDoc doc = resilnet::load_sweep_file(sweep_path);
            apply_overrides(doc.scenario, sweep_flags);
            resilnet::execute_sweep(doc, output_dir(doc.scenario), sweep_flags.quiet);
        } else if (cmd_threshold->parsed()) {
            resilnet::SweepDoc doc = resilnet::load_sweep_file(threshold_path);
            apply_overrides(doc.scenario, threshold_flags);
            resilnet::execute_threshold(doc, output_dir(doc.scenario), threshold_flags.quiet);
        } else if (cmd_reproduce->parsed()) {
            resilnet::Scenario scenario = resilnet::reproduce(figure_id);
            apply_overrides(scenario, reproduce_flags);
            resilnet::execute_run(scenario, output_dir(scenario), reproduce_flags.quiet);
        }
    } catch (const resilnet::BracketError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const resilnet::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const resilnet::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const resilnet::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
