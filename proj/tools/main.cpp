#include <iostream>

#include <CLI11.hpp>

#include "argus/cli/commands.hpp"

using namespace argus;

namespace {

void add_common(CLI::App* app, cli::CommonOptions& o) {
    app->add_option("--config", o.config, "Scenario TOML")->check(CLI::ExistingFile);
    app->add_option("--seed", o.seed, "RNG seed (overrides the config)");
    app->add_option("--out", o.out, "Output directory");
    app->add_option("--gas-schedule", o.gas_schedule, "TOML of gas overrides")->check(CLI::ExistingFile);
    app->add_option("--backend", o.backend, "Group backend")->check(CLI::IsMember({"tiny", "secure"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"argus: anti-piracy campaign simulator"};
    app.require_subcommand(1);

    cli::CommonOptions opts;
    struct PhaseCmd {
        const char* name;
        const char* help;
        actors::Phase phase;
    };
    const PhaseCmd phases[] = {
        {"init", "Deploy and fund the campaign", actors::Phase::Initiate},
        {"trade", "Initiate, then share data with every licensee", actors::Phase::Trade},
        {"report", "Run through the piracy reports", actors::Phase::Report},
        {"appeal", "Run through the appeals", actors::Phase::Appeal},
        {"run", "Play the whole scenario and check assertions", actors::Phase::All},
    };
    std::vector<std::pair<CLI::App*, actors::Phase>> phase_cmds;
    for (const auto& p : phases) {
        auto* sub = app.add_subcommand(p.name, p.help);
        add_common(sub, opts);
        phase_cmds.emplace_back(sub, p.phase);
    }

    std::string c_str = "1000000";
    int guarantee_len = 20;
    std::vector<long> n_list = {1, 5, 10, 20, 40};
    auto* curve = app.add_subcommand("reward-curve", "Emit reward(i, n) for both incentive models");
    curve->add_option("--c", c_str, "Bounty pool per licensee");
    curve->add_option("--guarantee-len", guarantee_len, "Guarantee length")->check(CLI::NonNegativeNumber);
    curve->add_option("--n", n_list, "Report counts")->delimiter(',');
    add_common(curve, opts);

    std::string dimension;
    std::vector<std::uint32_t> sweep;
    auto* bench = app.add_subcommand("bench", "Cost benchmarks");
    bench->add_option("dimension", dimension, "appeal-size | ot-latency | caching | bandwidth")
        ->required()
        ->check(CLI::IsMember({"appeal-size", "ot-latency", "caching", "bandwidth"}));
    bench->add_option("--sweep", sweep, "Sweep points (N values)")->delimiter(',');
    add_common(bench, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    try {
        for (const auto& [sub, phase] : phase_cmds) {
            if (sub->parsed()) return cli::cmd_run(opts, phase);
        }
        if (curve->parsed()) return cli::cmd_reward_curve(incentive::parse_money(c_str), guarantee_len, n_list, opts);
        if (bench->parsed()) return cli::cmd_bench(dimension, sweep, opts);
    } catch (const ConfigError& e) {
        std::cerr << "argus: " << e.what() << '\n';
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "argus: " << e.what() << '\n';
        return cli::kExitFailed;
    }
    return cli::kExitUsage;
}
