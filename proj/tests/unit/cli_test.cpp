#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "argus/rng.hpp"
#include "argus/cli/commands.hpp"

using namespace argus;
using namespace argus::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = ARGUS_SOURCE_DIR;
const std::string kCli = ARGUS_CLI_PATH;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const int rc = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("argus-cli-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
    const auto sc = parse_scenario(R"toml(
name = "t"
seed = 5
[campaign]
n = 32
k = 6
v = "2.5"
cache = "all"
[strategies]
licensees = ["LEAKER", "HONEST"]
informers = ["HONEST", "SYBIL(2)"]
)toml");
    EXPECT_EQ(sc.name, "t");
    EXPECT_EQ(*sc.seed, 5u);
    EXPECT_EQ(sc.campaign.n_versions, 32u);
    EXPECT_EQ(sc.campaign.k_periods, 6u);
    EXPECT_EQ(sc.campaign.lambda, 128u);
    EXPECT_EQ(sc.campaign.v, ledger::Money(5) / 2);
    EXPECT_EQ(sc.campaign.cache, contract::CachePolicy::All);
    ASSERT_EQ(sc.assignment.informers.size(), 2u);
    EXPECT_EQ(sc.assignment.informers[1].name, "I2");
    EXPECT_EQ(sc.assignment.informers[1].sybil_k, 2u);

    const ScenarioConfig d;
    EXPECT_EQ(d.campaign.n_versions, 10000u);
    EXPECT_EQ(d.campaign.k_periods, 1000u);
    EXPECT_EQ(d.campaign.guarantee_len, 20);
    EXPECT_EQ(d.campaign.m_licensees, 2u);
}

TEST(Config, Rejections) {
    EXPECT_THROW(parse_scenario("[campaign]\nn = 1\n"), ConfigError);
    EXPECT_THROW(parse_scenario("[campaign]\nlambda = 100\n"), ConfigError);
    EXPECT_THROW(parse_scenario("[campaign]\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse_scenario("[campaign]\nn = \"ten\"\n"), ConfigError);
    EXPECT_THROW(parse_scenario("[campaign\n"), ConfigError);
    EXPECT_THROW(parse_scenario("backend = \"quantum\"\n"), ConfigError);
    EXPECT_THROW(parse_scenario("[strategies]\ninformers = [\"PIRATE\"]\n"), ConfigError);
    EXPECT_THROW(parse_gas_schedule("per_hash = -1\n"), ConfigError);
    EXPECT_EQ(parse_gas_schedule("per_hash = 50\n").per_hash, 50u);
}

TEST(RewardCurve, RowsMatchSchedule) {
    const auto rows = lines(reward_curve_csv(1000000, 20, {1, 20, 40}));
    EXPECT_EQ(rows.at(0), "i,n,reward,immediate,deferred,legacy");
    auto has = [&](const std::string& row) { return std::find(rows.begin(), rows.end(), row) != rows.end(); };
    EXPECT_TRUE(has("1,1,1000000.000000,99999.904633,900000.095367,1000000.000000"));
    // reward(1,20) = immediate(1) + 0 deferred; legacy is c * 2^-19, flat in i.
    EXPECT_TRUE(has("1,20,99999.904633,99999.904633,0.000000,1.907349"));
    EXPECT_TRUE(has("1,inf,99999.904633,99999.904633,0.000000,0.000000"));
    EXPECT_EQ(rows.size(), 1u + 1 + 20 + 20 + 20);  // i capped at 20
    EXPECT_THROW(reward_curve_csv(0, 20, {1}), ConfigError);
}

TEST(Cli, UsageErrorsExitTwo) {
    const auto dir = scratch("usage");
    std::ofstream(dir / "bad.toml") << "[campaign]\nn = \"x\"\n";
    EXPECT_EQ(run_cli("run --config " + (dir / "bad.toml").string()), 2);
    EXPECT_EQ(run_cli("run --config " + (dir / "missing.toml").string()), 2);
    EXPECT_EQ(run_cli("--no-such-flag"), 2);
    std::ofstream(dir / "noseed.toml") << "[campaign]\nn = 16\nk = 4\n";
    EXPECT_EQ(run_cli("run --config " + (dir / "noseed.toml").string()), 2);
    EXPECT_EQ(run_cli("bench warp-speed"), 2);
    EXPECT_EQ(run_cli("--help"), 0);
}

TEST(Cli, SameSeedSameBytes) {
    const auto a = scratch("det-a"), b = scratch("det-b");
    const auto cfg = (kSource / "scenarios" / "million-bounty.toml").string();
    ASSERT_EQ(run_cli("run --config " + cfg + " --seed 9 --out " + a.string()), 0);
    ASSERT_EQ(run_cli("run --config " + cfg + " --seed 9 --out " + b.string()), 0);
    for (const char* f : {"outcome.json", "receipts.csv", "bandwidth.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Cli, PhaseSubcommandsStopEarly) {
    const auto dir = scratch("phase");
    const auto cfg = (kSource / "scenarios" / "million-bounty.toml").string();
    ASSERT_EQ(run_cli("init --config " + cfg + " --out " + dir.string()), 0);
    const auto init_rows = lines(slurp(dir / "receipts.csv")).size();
    ASSERT_EQ(run_cli("report --config " + cfg + " --out " + dir.string()), 0);
    const auto report_rows = lines(slurp(dir / "receipts.csv")).size();
    EXPECT_LT(init_rows, report_rows);
    EXPECT_NE(slurp(dir / "outcome.json").find("\"stopped_after\": \"report\""), std::string::npos);
}

// Golden outputs for the shipped scenario; regenerate with the CLI if the
// protocol changes on purpose.
TEST(Cli, GoldenMillionBounty) {
    const auto dir = scratch("golden");
    const auto cfg = (kSource / "scenarios" / "million-bounty.toml").string();
    ASSERT_EQ(run_cli("run --config " + cfg + " --out " + dir.string()), 0);
    for (const char* f : {"outcome.json", "receipts.csv", "bandwidth.csv"}) {
        EXPECT_EQ(slurp(dir / f), slurp(kSource / "tests" / "golden" / "million-bounty" / f)) << f;
    }
}
