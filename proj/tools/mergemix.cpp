// mergemix: merge-avoidance solvers and mixing-service incentive tooling.
//
//   mergemix ma solve (--single | --multi) INPUT [-o OUT] [--heuristic] [--max-cells N]
//   mergemix ma reduce INPUT [-o OUT]
//   mergemix scheme verify INPUT [--base-case | --impossibility] [--lmax N] [--kmax N] [-o OUT]
//   mergemix scheme design INPUT --pmf PMF [-o OUT]
//   mergemix sim run INPUT [-o OUT] [--trace CSV] [--format json|csv] [--seed N]
//
// Exit codes: 0 ok, 1 semantic negative, 2 malformed input, 3 solver limits.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "mergemix/commands.hpp"

using mergemix::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Merge avoidance and mixing-scheme incentive toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_io = [&cfg](CLI::App* sub) {
        sub->add_option("input", cfg.input, "Input JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", cfg.output, "Output path (default: standard output)");
    };

    auto* ma = app.add_subcommand("ma", "Merge avoidance");
    ma->require_subcommand(1);
    auto* ma_solve = ma->add_subcommand("solve", "Solve a single- or multi-target instance");
    add_io(ma_solve);
    auto* single = ma_solve->add_flag("--single", cfg.single, "Single-target instance {values, v}");
    bool multi = false;
    auto* multi_flag = ma_solve->add_flag("--multi", multi, "Multi-target instance {inputs, outputs}");
    single->excludes(multi_flag);
    ma_solve->add_flag("--heuristic", cfg.heuristic, "Northwest-corner split instead of exact search");
    ma_solve->add_option("--max-cells", cfg.max_cells, "Exact search size guard (inputs x outputs)")
        ->check(CLI::PositiveNumber);
    ma_solve->callback([&] { cfg.command = RunConfig::Command::MaSolve; });

    auto* ma_reduce = ma->add_subcommand("reduce", "Reduce a partition instance to merge avoidance");
    add_io(ma_reduce);
    ma_reduce->callback([&] { cfg.command = RunConfig::Command::MaReduce; });

    auto* scheme = app.add_subcommand("scheme", "Reward/tax schemes");
    scheme->require_subcommand(1);
    auto* verify = scheme->add_subcommand("verify", "Check edge-insertion conditions");
    add_io(verify);
    auto* base = verify->add_flag("--base-case", cfg.base_case, "Only k = 1");
    auto* imp = verify->add_flag("--impossibility", cfg.impossibility, "Input is a raw zero-sum R table {R: [...]}");
    base->excludes(imp);
    verify->add_option("--lmax", cfg.lmax, "Largest honest route length checked")->check(CLI::PositiveNumber);
    verify->add_option("--kmax", cfg.kmax, "Largest Sybil count checked")->check(CLI::PositiveNumber);
    verify->callback([&] { cfg.command = RunConfig::Command::SchemeVerify; });

    auto* design = scheme->add_subcommand("design", "Complete a scheme with the credit-neutral T0");
    add_io(design);
    design->add_option("--pmf", cfg.pmf, "Route length pmf JSON")->required()->check(CLI::ExistingFile);
    design->add_option("--lmax", cfg.lmax, "Override Lmax")->check(CLI::PositiveNumber);
    design->add_option("--kmax", cfg.kmax, "Override Kmax")->check(CLI::PositiveNumber);
    design->callback([&] { cfg.command = RunConfig::Command::SchemeDesign; });

    auto* sim = app.add_subcommand("sim", "Economy simulation");
    sim->require_subcommand(1);
    auto* sim_run = sim->add_subcommand("run", "Simulate a message stream");
    add_io(sim_run);
    sim_run->add_option("--trace", cfg.trace, "Also write the supply trace CSV here");
    const std::map<std::string, RunConfig::Format> formats{{"json", RunConfig::Format::Json},
                                                           {"csv", RunConfig::Format::Csv}};
    sim_run->add_option("--format", cfg.format, "Main output: json report or csv trace")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sim_run->add_option("--seed", cfg.seed, "Override the config seed");
    sim_run->callback([&] { cfg.command = RunConfig::Command::SimRun; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mergemix::cli::kMalformed;
    }
    if (cfg.command == RunConfig::Command::MaSolve && !cfg.single && !multi) {
        std::cerr << "error: ma solve needs --single or --multi\n";
        return mergemix::cli::kMalformed;
    }
    return mergemix::cli::run(cfg, std::cout, std::cerr);
}
