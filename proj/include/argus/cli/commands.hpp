#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "argus/cli/config.hpp"

namespace argus::cli {

/// Flags shared by every subcommand.
struct CommonOptions {
    std::optional<std::filesystem::path> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> gas_schedule;
    std::optional<std::string> backend;
};

/// Exit codes: 0 success, 1 assertion or criterion failure, 2 usage or
/// configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// i,n,reward,immediate,deferred,legacy; n = "inf" rows carry the
/// guaranteed amounts.
std::string reward_curve_csv(const ledger::Money& c, int guarantee_len, const std::vector<long>& n_list, int max_i = 20);
std::string receipts_csv(const std::vector<ledger::Receipt>& log);
std::string bandwidth_csv(const pir::BandwidthLedger& ledger);
nlohmann::ordered_json outcome_json(const ScenarioConfig& sc, std::uint64_t seed, const actors::GameResult& res);

/// Loads the scenario and applies --seed, --backend and --gas-schedule.
/// Throws ConfigError when no seed is given anywhere.
ScenarioConfig resolve_scenario(const CommonOptions& opts, std::uint64_t& seed);

int cmd_run(const CommonOptions& opts, actors::Phase stop_after);
int cmd_reward_curve(const ledger::Money& c, int guarantee_len, const std::vector<long>& n_list, const CommonOptions& opts);
/// dimension in {appeal-size, ot-latency, caching, bandwidth}; empty sweep
/// picks the default points.
int cmd_bench(const std::string& dimension, std::vector<std::uint32_t> sweep, const CommonOptions& opts);

}  // namespace argus::cli
