#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "resgame/errors.hpp"
#include "resgame/report.hpp"
#include "resgame/scenario.hpp"

namespace {

struct CommandOptions {
    std::string scenario_path;
    std::string format = "table";
    bool strict = false;
};

void add_common_options(CLI::App* command, CommandOptions& options) {
    command->add_option("--scenario", options.scenario_path,
                        "Scenario file to analyze ('-' reads standard input)")
        ->required();
    command->add_option("--format", options.format, "Output format")
        ->check(CLI::IsMember({"table", "machine"}))
        ->capture_default_str();
    command->add_flag("--strict", options.strict,
                      "Exit with status 2 when a remediation lever is infeasible");
}

int run(resgame::AnalysisKind kind, const CommandOptions& options) {
    using namespace resgame;

    Report report;
    try {
        const Scenario scenario = parse_scenario_file(options.scenario_path);
        report = run_analysis(scenario, AnalysisOptions{kind});
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const ValidationError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }

    std::cout << render_report(
        report, options.format == "machine" ? ReportFormat::Machine : ReportFormat::Table);

    if (options.strict && report.has_infeasible_lever()) {
        std::cerr << "error: remediation has an infeasible lever (strict mode)\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loyalty and remediation analysis for multi-service resource usage"};
    app.require_subcommand(1);

    CommandOptions options;
    CLI::App* analyze = app.add_subcommand("analyze", "Run the full analysis pipeline");
    CLI::App* equilibrium =
        app.add_subcommand("equilibrium", "Per-service equilibrium of a parametric scenario");
    CLI::App* core_check =
        app.add_subcommand("core-check", "Test whether any coalition beats the baseline");
    CLI::App* advise = app.add_subcommand("advise", "Provider-side remediation levers only");
    for (CLI::App* command : {analyze, equilibrium, core_check, advise}) {
        add_common_options(command, options);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }

    resgame::AnalysisKind kind = resgame::AnalysisKind::Full;
    if (equilibrium->parsed()) kind = resgame::AnalysisKind::Equilibrium;
    if (core_check->parsed()) kind = resgame::AnalysisKind::CoreCheck;
    if (advise->parsed()) kind = resgame::AnalysisKind::Advise;

    return run(kind, options);
}
