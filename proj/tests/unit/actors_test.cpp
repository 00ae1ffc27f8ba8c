#include <gtest/gtest.h>

#include "argus/rng.hpp"
#include "argus/actors/game.hpp"
#include "argus/cli/commands.hpp"

using namespace argus;
using namespace argus::actors;

namespace argus::actors {
// Keeps parameter dumps out of test names.
void PrintTo(const Scenario& sc, std::ostream* os) { *os << sc.name; }
}  // namespace argus::actors

namespace {

CampaignConfig small_campaign() {
    CampaignConfig c;
    c.n_versions = 16;
    c.k_periods = 8;
    c.m_licensees = 2;
    return c;
}

}  // namespace

class ScenarioMatrix : public ::testing::TestWithParam<Scenario> {};

// A Sybil that reveals ahead of an honest informer gains: B(1,3) + B(2,3)
// exceeds B(1,2) by 2*xi_3 - xi_2 = 25000 under the geometric schedule. The
// game keeps the assertion and this test pins the failure to that check.
bool front_running_sybil(const std::string& assertion) { return assertion.rfind("sybil: ", 0) == 0; }

TEST_P(ScenarioMatrix, HonestRoleInterestHolds) {
    const auto& sc = GetParam();
    const auto res = run_game(small_campaign(), sc.assignment, 7);
    const bool deviates = sc.name == "owner/coalition-L1-L2-I1-I2";
    for (const auto& a : res.assertions) {
        if (deviates && front_running_sybil(a.name)) {
            EXPECT_FALSE(a.passed) << a.name;
            EXPECT_EQ(a.detail, "split 550000.000000 vs single 525000.000000");
            continue;
        }
        EXPECT_TRUE(a.passed) << sc.name << ": " << a.name << " " << a.detail;
    }
    EXPECT_EQ(res.passed(), !deviates);
    EXPECT_EQ(res.supply_before, res.supply_after);
}

INSTANTIATE_TEST_SUITE_P(All, ScenarioMatrix, ::testing::ValuesIn(scenario_matrix()),
                         [](const auto& info) {
                             std::string s = info.param.name;
                             for (auto& ch : s)
                                 if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                             return s;
                         });

TEST(Scenarios, MatrixCoversEachHonestRole) {
    const auto m = scenario_matrix();
    ASSERT_EQ(m.size(), 14u);
    std::map<std::string, int> by_role;
    for (const auto& s : m) ++by_role[s.honest_role];
    EXPECT_EQ(by_role["owner"], 8);
    EXPECT_EQ(by_role["licensee"], 3);
    EXPECT_EQ(by_role["informer"], 3);
}

TEST(Game, SameSeedSameReceipts) {
    const auto sc = scenario_matrix().at(5);
    const auto a = run_game(small_campaign(), sc.assignment, 11);
    const auto b = run_game(small_campaign(), sc.assignment, 11);
    EXPECT_EQ(cli::receipts_csv(a.receipts), cli::receipts_csv(b.receipts));
    EXPECT_EQ(a.outcome, b.outcome);
    EXPECT_EQ(a.choices, b.choices);
}

TEST(Game, OutcomeReplaysFromLog) {
    Assignment as;
    as.licensees = {LicenseeStrategy::Leaker, LicenseeStrategy::Honest};
    as.informers = {parse_informer_spec("HONEST", "I1"), parse_informer_spec("SYBIL(2)", "I2")};
    const auto res = run_game(small_campaign(), as, 3);
    EXPECT_EQ(outcome_from_log(res.receipts, 2), res.outcome);
    EXPECT_EQ(res.outcome.statuses[0], contract::Status::Guilty);
    EXPECT_EQ(res.outcome.statuses[1], contract::Status::Normal);
    EXPECT_EQ(res.outcome.report_numbers[0], 3u);
}

TEST(Game, PhaseStopsEarly) {
    Assignment as;
    as.licensees = {LicenseeStrategy::Leaker, LicenseeStrategy::Honest};
    as.informers = {parse_informer_spec("HONEST", "I1")};
    const auto init = run_game(small_campaign(), as, 5, Phase::Initiate);
    EXPECT_EQ(init.stopped_after, Phase::Initiate);
    EXPECT_TRUE(init.outcome.payouts.empty());
    const auto report = run_game(small_campaign(), as, 5, Phase::Report);
    EXPECT_EQ(report.outcome.statuses[0], contract::Status::Accused);
    EXPECT_GT(report.receipts.size(), init.receipts.size());
    EXPECT_EQ(parse_phase("trade"), Phase::Trade);
    EXPECT_THROW(parse_phase("later"), ConfigError);
}

TEST(Game, MalformedAssignmentRejected) {
    Assignment as;
    as.licensees = {LicenseeStrategy::Honest};  // M = 2 expected
    EXPECT_THROW(run_game(small_campaign(), as, 1), ConfigError);
    as.licensees = {LicenseeStrategy::Honest, LicenseeStrategy::Honest};
    as.informers = {parse_informer_spec("HONEST", "I1"), parse_informer_spec("HONEST", "I1")};
    EXPECT_THROW(run_game(small_campaign(), as, 1), ConfigError);
}

TEST(Actors, ConfigErrorsBeforeAnyLedgerWrite) {
    auto cfg = small_campaign();
    cfg.lambda = 12;
    EXPECT_THROW(cfg.validate(), ConfigError);
    ledger::Ledger led;
    OwnerActor owner(cfg, crypto::make_group("tiny"), Rng(1));
    EXPECT_THROW(owner.initiate(led, {"licensee-1", "licensee-2"}, {}), ConfigError);
    EXPECT_TRUE(led.tx_log().empty());
    EXPECT_EQ(led.total_supply(), Money(0));
}

TEST(Actors, SecondDeployRejected) {
    const auto cfg = small_campaign();
    auto group = crypto::make_group("tiny");
    ledger::Ledger led;
    Rng rng(2);
    LicenseeActor l1(1, LicenseeStrategy::Honest, rng.fork("1")), l2(2, LicenseeStrategy::Honest, rng.fork("2"));
    OwnerActor owner(cfg, group, rng.fork("o"));
    led.credit(owner.address(), cfg.v * cfg.m_licensees);
    owner.initiate(led, {l1.address(), l2.address()}, {l1.keys().pub, l2.keys().pub});
    const auto writes = led.tx_log().size();
    OwnerActor again(cfg, group, rng.fork("o2"));
    EXPECT_THROW(again.initiate(led, {l1.address(), l2.address()}, {l1.keys().pub, l2.keys().pub}), ConfigError);
    EXPECT_EQ(led.tx_log().size(), writes);
}

TEST(Actors, LicenseeCopyCarriesItsVersionId) {
    const auto cfg = small_campaign();
    auto group = crypto::make_group("tiny");
    ledger::Ledger led;
    Rng rng(4);
    LicenseeActor l1(1, LicenseeStrategy::Leaker, rng.fork("1")), l2(2, LicenseeStrategy::Honest, rng.fork("2"));
    OwnerActor owner(cfg, group, rng.fork("o"));
    led.credit(owner.address(), cfg.v * cfg.m_licensees);
    owner.initiate(led, {l1.address(), l2.address()}, {l1.keys().pub, l2.keys().pub});
    l1.acquire(owner);
    l2.acquire(owner);
    ASSERT_TRUE(l1.record());
    EXPECT_EQ(l1.copy(), owner.copy_of(1, l1.record()->l));
    EXPECT_EQ(l2.copy(), owner.copy_of(2, l2.record()->l));
    const auto id = watermark::detect(l1.copy(), cfg.segments(), cfg.id_bytes());
    const auto hit = owner.lookup(id);
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->first, 1u);
    EXPECT_EQ(hit->second, l1.record()->l);
}

TEST(Actors, InformerSpecParsing) {
    EXPECT_EQ(parse_informer_spec("SYBIL(4)", "I1").sybil_k, 4u);
    EXPECT_EQ(parse_informer_spec("REPLAYER", "I1").kind, InformerKind::Replayer);
    EXPECT_THROW(parse_informer_spec("SYBIL(0)", "I1"), ConfigError);
    EXPECT_THROW(parse_informer_spec("SYBIL(x)", "I1"), ConfigError);
    EXPECT_THROW(parse_informer_spec("PIRATE", "I1"), ConfigError);
    EXPECT_THROW(parse_licensee_strategy("SAINT"), ConfigError);
    InformerActor s(parse_informer_spec("SYBIL(3)", "I2"), Rng(1));
    EXPECT_EQ(s.addresses(), (std::vector<Address>{"I2-s1", "I2-s2", "I2-s3"}));
}

// A guessed id of lambda bits essentially never lands in the IdMap.
TEST(Actors, GuessedIdsMissTheIdMap) {
    Rng rng(8);
    std::vector<std::vector<Bytes>> ids(2);
    for (auto& row : ids)
        for (int y = 0; y < 64; ++y) row.push_back(rng.bytes(16));
    const auto store = merkle::id_tree_build(ids, 4);
    std::uint64_t hits = 0;
    for (int i = 0; i < 1000000; ++i) hits += store.lookup(merkle::id_hash(rng.bytes(16))).has_value();
    EXPECT_EQ(hits, 0u);
    EXPECT_TRUE(store.lookup(merkle::id_hash(ids[1][7])).has_value());
}

TEST(Actors, FalseAccuserGamesMostlyExonerate) {
    const auto mc = false_accusation_games(small_campaign(), 20, 100);
    EXPECT_EQ(mc.trials, 20u);
    EXPECT_EQ(mc.exonerated + mc.guilty, 20u);
    EXPECT_GE(mc.exonerated, 15u);  // 15/16 expected per game
}
