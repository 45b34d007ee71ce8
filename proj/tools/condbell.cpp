// condbell: Kolmogorov-space analysis of bipartite two-setting experiments.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "condbell/cli/commands.hpp"

namespace {

using namespace condbell::cli;

void addCommon(CLI::App* cmd, CommonOptions& common, bool outIsReport = true) {
    cmd->add_option("--tolerance", common.tolerance, "Absolute tolerance for equality checks (default 1e-9)");
    cmd->add_flag("--exact-lp", common.exactLp, "Decide joint-distribution existence in exact rational arithmetic");
    cmd->add_flag("--json", common.json, "Print the structured report instead of text");
    cmd->add_option(outIsReport ? "--out,--report" : "--report", common.reportPath,
                    "Also write the structured report to this file");
}

std::vector<std::uint64_t> parseCounts(const std::string& list) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Classical probability space for two-setting Bell experiments: identities, locality, CHSH, "
        "joint-distribution feasibility and Monte Carlo simulation"};
    app.require_subcommand(1);

    AnalyzeOptions analyzeOpts;
    auto* analyzeCmd = app.add_subcommand("analyze", "Build the space from a config and run every check");
    analyzeCmd->add_option("--config", analyzeOpts.configPath, "Experiment config (JSON)")->required();
    addCommon(analyzeCmd, analyzeOpts.common);

    SimulateOptions simOpts;
    auto* simCmd = app.add_subcommand("simulate", "Sample trials and write the event-record CSV");
    simCmd->add_option("--config", simOpts.configPath, "Experiment config (JSON)")->required();
    simCmd->add_option("--n", simOpts.n, "Number of trials")->required();
    simCmd->add_option("--seed", simOpts.seed, "Stream seed")->capture_default_str();
    simCmd->add_option("--out", simOpts.outPath, "Output CSV path")->required();
    simCmd->add_option("--shards", simOpts.shards, "Worker threads (output does not depend on it)")
        ->capture_default_str();
    addCommon(simCmd, simOpts.common, false);

    IngestOptions ingestOpts;
    auto* ingestCmd = app.add_subcommand("ingest", "Estimate tables from an event-record CSV and run every check");
    ingestCmd->add_option("csv", ingestOpts.csvPath, "Event-record CSV")->required();
    addCommon(ingestCmd, ingestOpts.common);

    TsirelsonOptions tsOpts;
    auto* tsCmd = app.add_subcommand("tsirelson", "Scan analyzer angles for the largest |S_cond|");
    tsCmd->add_option("--grid", tsOpts.grid, "Points per dial over [0, pi]")->capture_default_str();
    tsCmd->add_flag("--spin", tsOpts.spin, "Use the spin-1/2 correlation -cos(d) instead of cos(2d)");
    tsCmd->add_flag("--json", tsOpts.json, "Structured output");

    CurveOptions curveOpts;
    auto* curveCmd = app.add_subcommand("curve", "S_abs and S_cond over a grid of product setting weights (CSV)");
    curveCmd->add_option("--config", curveOpts.configPath, "Experiment config (JSON)")->required();
    curveCmd->add_option("--grid", curveOpts.grid, "Points per generator marginal")->capture_default_str();
    curveCmd->add_option("--tolerance", curveOpts.tolerance, "Absolute tolerance");

    ConvergenceOptions convOpts;
    std::string convCounts;
    auto* convCmd = app.add_subcommand("convergence", "Max atom-frequency error versus sample size (CSV)");
    convCmd->add_option("--config", convOpts.configPath, "Experiment config (JSON)")->required();
    convCmd->add_option("--n", convCounts, "Comma-separated sample sizes, e.g. 10000,100000,1000000")->required();
    convCmd->add_option("--seed", convOpts.seed, "Stream seed")->capture_default_str();
    convCmd->add_option("--shards", convOpts.shards, "Worker threads");
    convCmd->add_option("--tolerance", convOpts.tolerance, "Absolute tolerance");

    try {
        app.parse(argc, argv);
        if (!convCounts.empty()) convOpts.nList = parseCounts(convCounts);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    }

    if (*analyzeCmd) return runAnalyze(analyzeOpts, std::cout, std::cerr);
    if (*simCmd) return runSimulate(simOpts, std::cout, std::cerr);
    if (*ingestCmd) return runIngest(ingestOpts, std::cout, std::cerr);
    if (*tsCmd) return runTsirelson(tsOpts, std::cout, std::cerr);
    if (*curveCmd) return runCurve(curveOpts, std::cout, std::cerr);
    if (*convCmd) return runConvergence(convOpts, std::cout, std::cerr);
    return kExitParse;
}
