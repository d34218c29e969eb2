#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pinsync/commands.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    bool out_given = false;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "path to the JSON run configuration")
        ->required();
    cmd->add_option("--out", flags.out_dir, "output directory for report files");
    cmd->add_option("--seed", flags.seed,
                    "override the seed (initial states, or sampling for verify-assumption)");
}

pinsync::RunConfig load(const CommonFlags& flags, bool for_verify) {
    pinsync::RunConfig config = pinsync::load_config_file(flags.config_path);
    if (flags.seed) {
        if (for_verify) {
            config.check_seed = *flags.seed;
        } else if (config.seeded) {
            config.seed = *flags.seed;
        } else {
            throw pinsync::Error("--seed given but the config has literal initial states");
        }
    }
    return config;
}

std::string resolve_out(const CommonFlags& flags, const pinsync::RunConfig& config) {
    if (!flags.out_dir.empty()) return flags.out_dir;
    if (!config.out_dir.empty()) return config.out_dir;
    return "out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synchronization toolkit for event-triggered pinning impulsive control"};
    app.require_subcommand(1);

    CommonFlags check_flags, select_flags, sim_flags, bounds_flags, verify_flags;
    std::string run_dir;

    CLI::App* check = app.add_subcommand("check", "evaluate the spectral condition");
    add_common(check, check_flags);
    CLI::App* select = app.add_subcommand("select", "run the pinning-node selection procedure");
    add_common(select, select_flags);
    CLI::App* simulate = app.add_subcommand("simulate", "run the hybrid closed-loop simulation");
    add_common(simulate, sim_flags);
    CLI::App* bounds =
        app.add_subcommand("bounds", "inter-event lower bounds for a completed run");
    add_common(bounds, bounds_flags);
    bounds->add_option("--run", run_dir, "directory holding the run's trace.csv/events.csv "
                                         "(defaults to --out)");
    CLI::App* verify = app.add_subcommand("verify-assumption",
                                          "sample the one-sided growth bound over a box");
    add_common(verify, verify_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            auto config = load(check_flags, false);
            return pinsync::cmd_check(config, resolve_out(check_flags, config), std::cout);
        }
        if (select->parsed()) {
            auto config = load(select_flags, false);
            return pinsync::cmd_select(config, resolve_out(select_flags, config), std::cout);
        }
        if (simulate->parsed()) {
            auto config = load(sim_flags, false);
            return pinsync::cmd_simulate(config, resolve_out(sim_flags, config), std::cout);
        }
        if (bounds->parsed()) {
            auto config = load(bounds_flags, false);
            const std::string out = resolve_out(bounds_flags, config);
            return pinsync::cmd_bounds(config, run_dir.empty() ? out : run_dir, out, std::cout);
        }
        if (verify->parsed()) {
            auto config = load(verify_flags, true);
            return pinsync::cmd_verify_assumption(config, resolve_out(verify_flags, config),
                                                  std::cout);
        }
    } catch (const pinsync::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
