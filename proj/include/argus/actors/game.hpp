#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "argus/actors/actors.hpp"

namespace argus::actors {

enum class OwnerStrategy { Honest, FalseAccuser };
const char* to_string(OwnerStrategy s);
OwnerStrategy parse_owner_strategy(const std::string& s);

struct Assignment {
    OwnerStrategy owner = OwnerStrategy::Honest;
    std::vector<LicenseeStrategy> licensees;  // licensees[x-1]; size must be M
    std::vector<InformerSpec> informers;
    /// Extra honest informers from the open population, named P1, P2, ...
    std::uint32_t open_population = 0;
    /// Licensee a false-accusing owner frames.
    std::uint32_t frame_target = 1;
    /// Leakers also report their own copy (logged, never asserted).
    bool self_report = false;
};

/// Stop points for the phase-limited CLI subcommands.
enum class Phase { Initiate, Trade, Report, Appeal, All };
Phase parse_phase(const std::string& s);

struct Outcome {
    std::vector<contract::Status> statuses;       // [x-1]
    std::vector<std::uint32_t> report_numbers;    // [x-1]
    std::map<Address, Money> payouts;             // bounty received per address
    std::size_t accepted_reports = 0;
    std::size_t rejected_reports = 0;

    bool operator==(const Outcome&) const = default;
};

/// Rebuilt from contract events alone.
Outcome outcome_from_log(const std::vector<ledger::Receipt>& log, std::uint32_t m_licensees);

struct Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct GameResult {
    Outcome outcome;
    std::vector<ledger::Receipt> receipts;
    std::vector<Assertion> assertions;
    std::vector<std::string> notes;
    pir::BandwidthLedger bandwidth;
    std::vector<std::uint32_t> choices;  // licensee l, [x-1]
    std::optional<std::uint32_t> framed_version;
    Money supply_before = 0, supply_after = 0;
    Phase stopped_after = Phase::All;

    bool passed() const;
};

/// Plays one campaign on a fresh ledger and checks each honest role's
/// interest. Assertion failures are reported, not raised. Throws
/// ConfigError on a malformed assignment.
GameResult run_game(const CampaignConfig& cfg, const Assignment& assignment, std::uint64_t seed,
                    Phase stop_after = Phase::All);

struct Scenario {
    std::string name;
    std::string honest_role;  // owner, licensee or informer
    Assignment assignment;
};

/// Case enumeration by honest role: 8 honest-owner, 3
/// honest-licensee and 3 honest-informer scenarios.
std::vector<Scenario> scenario_matrix();

struct MonteCarloResult {
    std::uint64_t trials = 0;
    std::uint64_t exonerated = 0;
    std::uint64_t guilty = 0;

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(exonerated) / static_cast<double>(trials); }
};

/// FALSE_ACCUSER owner against an honest licensee at the protocol level:
/// the owner frames a uniformly guessed version, the licensee appeals with
/// its record whenever the guess misses.
MonteCarloResult false_accusation_trials(std::uint32_t n, std::uint64_t trials, std::uint64_t seed,
                                         const std::string& backend = "tiny");

/// Same experiment through full on-chain games, one per seed.
MonteCarloResult false_accusation_games(const CampaignConfig& cfg, std::uint64_t games, std::uint64_t seed);

}  // namespace argus::actors
