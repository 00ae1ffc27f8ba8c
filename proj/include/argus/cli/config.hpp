#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "argus/actors/game.hpp"

namespace argus::cli {

/// A campaign plus its strategy assignment, loaded from TOML.
struct ScenarioConfig {
    std::string name = "campaign";
    std::optional<std::uint64_t> seed;
    actors::CampaignConfig campaign;
    actors::Assignment assignment;
    std::filesystem::path asset_path;

    /// Campaign defaults are N = 10000, K = 1000, lambda = 128,
    /// guarantee_len = 20, M = 2 licensees.
    ScenarioConfig();
};

/// Throws ConfigError on syntax errors, unknown keys, wrong types and
/// failed validation. Relative asset paths resolve against `base_dir`.
ScenarioConfig parse_scenario(std::string_view toml, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Overrides on top of `base`: a flat table of GasSchedule field names.
ledger::GasSchedule parse_gas_schedule(std::string_view toml, ledger::GasSchedule base = {});
ledger::GasSchedule load_gas_schedule(const std::filesystem::path& path, ledger::GasSchedule base = {});

}  // namespace argus::cli
