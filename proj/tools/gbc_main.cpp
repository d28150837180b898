#include "gbc/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Degenerate parabolic x-problem: simulation, verification, u/x equivalence"};
    app.require_subcommand(1);

    gbc::CliOptions opts;
    std::string config, out = "run", preset;
    int cells = 0;
    double t_end = 0.0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory");
        sub->add_option("--preset", preset, "scenario preset")
            ->check(CLI::IsMember(gbc::preset_names()));
        sub->add_option("--cells", cells, "grid cells")->check(CLI::PositiveNumber);
        sub->add_option("--t-end", t_end, "time horizon")->check(CLI::PositiveNumber);
    };

    auto* simulate = app.add_subcommand("simulate", "run the eps-continuation and write a run directory");
    add_common(simulate);
    auto* verify = app.add_subcommand("verify", "check a run directory, write verdicts.json");
    std::string run_dir;
    verify->add_option("run_dir", run_dir, "directory written by simulate")->required();
    verify->add_option("--seed", seed, "seed for random profile sampling");
    auto* equivalence = app.add_subcommand("equivalence", "compare u- and x-solvers before t0");
    add_common(equivalence);
    auto* steady = app.add_subcommand("steady", "print the steady state table");
    add_common(steady);

    CLI11_PARSE(app, argc, argv);

    if (!config.empty()) opts.config = config;
    opts.out = out;
    if (!preset.empty()) opts.preset = preset;
    if (cells > 0) opts.cells = cells;
    if (t_end > 0.0) opts.t_end = t_end;

    if (*simulate) return gbc::cmd_simulate(opts, std::cout, std::cerr);
    if (*verify) {
        std::optional<std::uint64_t> s;
        if (verify->count("--seed") > 0) s = seed;
        return gbc::cmd_verify(run_dir, s, std::cout, std::cerr);
    }
    if (*equivalence) return gbc::cmd_equivalence(opts, std::cout, std::cerr);
    return gbc::cmd_steady(opts, std::cout, std::cerr);
}
