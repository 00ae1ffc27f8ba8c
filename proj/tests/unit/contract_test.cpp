#include <gtest/gtest.h>

#include "argus/rng.hpp"
#include "argus/commitment/commitment.hpp"
#include "argus/contract/argus_contract.hpp"

using namespace argus;
using namespace argus::contract;
using ledger::TxStatus;

namespace {

constexpr std::uint32_t kN = 8, kM = 2, kK = 5;

class ContractFixture : public ::testing::Test {
protected:
    Rng rng{99};
    std::shared_ptr<const crypto::Group> group = crypto::make_group("tiny");
    crypto::KeyPair owner = crypto::KeyPair::generate(rng);
    std::vector<crypto::KeyPair> lics{crypto::KeyPair::generate(rng), crypto::KeyPair::generate(rng)};
    ot::Initialized ot = ot::initialize(group, kN, rng, owner.secret);
    std::vector<std::vector<Bytes>> ids;
    std::optional<merkle::OwnerIdStore> store;
    ledger::Ledger led;

    void deploy(bool p_root_mode = false, bool baseline = false, bool fund = true) {
        ids.assign(kM, {});
        for (auto& row : ids)
            for (std::uint32_t y = 0; y < kN; ++y) row.push_back(rng.bytes(16));
        store.emplace(merkle::id_tree_build(ids, kK));
        ArgusConfig c;
        c.owner = "owner";
        c.owner_pk = owner.pub;
        c.licensees = {"licensee-1", "licensee-2"};
        c.licensee_pks = {lics[0].pub, lics[1].pub};
        c.group = group;
        c.a_s = ot.params.a_s;
        c.shape = store->shape();
        c.p_root_mode = p_root_mode;
        c.baseline_appeal = baseline;
        led.register_contract("argus", std::make_unique<ArgusContract>(c));
        led.credit("owner", 10 * c.v);
        if (!fund) return;
        if (p_root_mode) {
            StoreCall s;
            s.kind = StoreKind::PRoot;
            s.digest = p_tree().root();
            ok(owner_store(s));
        } else {
            StoreCall s;
            s.kind = StoreKind::PBatch;
            s.points = ot.params.points;
            ok(owner_store(s));
        }
        StoreCall rt;
        rt.kind = StoreKind::Rt;
        rt.digest = store->root();
        ok(owner_store(rt));
        ok(led.submit("owner", "argus", "deposit", {}, Money(kM) * 1000000));
    }

    merkle::MerkleTree p_tree() const {
        std::vector<Digest> leaves;
        for (const auto& p : ot.params.points) leaves.push_back(p_leaf(p));
        return merkle::MerkleTree(leaves);
    }

    ledger::Receipt owner_store(const StoreCall& s) { return led.submit("owner", "argus", "store", s.encode()); }

    static void ok(const ledger::Receipt& rc) { ASSERT_EQ(rc.status, TxStatus::Ok) << rc.error; }

    const ArgusContract& argus() const { return static_cast<const ArgusContract&>(led.contract("argus")); }

    void commit(const std::string& informer, std::uint32_t x, std::uint32_t y) {
        StoreCall s;
        s.kind = StoreKind::Cm;
        s.digest = commitment::commit_digest(merkle::id_reveal(ids[x - 1][y - 1], led.time()), as_bytes(informer));
        s.x = x;
        s.y = y;
        ok(led.submit(informer, "argus", "store", s.encode()));
    }

    // Reveals a copy committed in the previous period.
    ledger::Receipt reveal(const std::string& informer, std::uint32_t x, std::uint32_t y, std::uint32_t ts = 0) {
        if (ts == 0) ts = led.time() - 1;
        ReportCall r;
        r.rv1 = merkle::id_reveal(ids[x - 1][y - 1], ts);
        r.path = store->query(x, y, ts, ids[x - 1][y - 1]);
        r.informer = informer;
        return led.submit(informer, "argus", "report", r.encode());
    }

    ledger::Receipt appeal(std::uint32_t x, std::uint32_t l, const std::string& caller = "") {
        const auto rec = ot::choose(ot.params, l, rng);
        const auto ev = ot::generate_evidence(ot.params, *ot.secret, rec, lics[x - 1].secret, lics[x - 1].pub, owner.secret);
        AppealCall a;
        a.x = x;
        a.sub = ot::make_appeal(ev, rec);
        if (argus().config().p_root_mode) a.p_proof = PointProof{ot.params.point(l), p_tree().prove(l - 1)};
        return led.submit(caller.empty() ? "licensee-" + std::to_string(x) : caller, "argus", "appeal", a.encode(*group));
    }

    ledger::Receipt set_guilty(std::uint32_t x) {
        return led.submit("owner", "argus", "set_guilty", LicenseeCall{x}.encode());
    }

    ledger::Receipt allocate(const std::string& informer, std::uint32_t x) {
        return led.submit(informer, "argus", "allocate_bounty", AllocateCall{x, informer}.encode());
    }
};

}  // namespace

TEST_F(ContractFixture, DepositGates) {
    deploy(false, false, false);
    EXPECT_EQ(led.submit("owner", "argus", "deposit", {}, Money(kM) * 1000000).error, "root must be stored before the deposit");
    StoreCall rt;
    rt.kind = StoreKind::Rt;
    rt.digest = store->root();
    EXPECT_EQ(led.submit("mallory", "argus", "store", rt.encode()).status, TxStatus::Reverted);
    ok(owner_store(rt));
    EXPECT_EQ(led.submit("owner", "argus", "deposit", {}, 5).error, "deposit must be v per licensee");
    EXPECT_EQ(led.submit("mallory", "argus", "deposit", {}, 0).error, "only the owner deposits");
    ok(led.submit("owner", "argus", "deposit", {}, Money(kM) * 1000000));
    EXPECT_TRUE(argus().started());
    EXPECT_EQ(owner_store(rt).error, "rt cannot change after the campaign starts");
    EXPECT_EQ(led.submit("owner", "argus", "deposit", {}, Money(kM) * 1000000).error, "campaign already started");
    StoreCall pb;
    pb.kind = StoreKind::PBatch;
    pb.points = {ot.params.points[0]};
    EXPECT_EQ(owner_store(pb).status, TxStatus::Reverted);
    EXPECT_EQ(led.balance("argus"), Money(kM) * 1000000);
}

TEST_F(ContractFixture, ReportAccusesAndPaysImmediate) {
    deploy();
    commit("I1", 1, 3);
    EXPECT_EQ(reveal("I1", 1, 3, 1).error, "no earlier period to reveal from");
    led.advance_period();
    const auto rc = reveal("I1", 1, 3);
    ok(rc);
    const auto& lic = argus().licensee(1);
    EXPECT_EQ(lic.status, Status::Accused);
    EXPECT_EQ(lic.version, 3u);
    EXPECT_EQ(lic.report_time, 1u);
    EXPECT_EQ(lic.report_number, 1u);
    EXPECT_EQ(led.balance("I1"), argus().schedule().immediate(1));
    EXPECT_EQ(argus().licensee(2).status, Status::Normal);
    ASSERT_EQ(rc.events.size(), 3u);
    EXPECT_EQ(rc.events[0].name, "Accused");
    EXPECT_EQ(rc.events[2].field("kind"), "immediate");
    EXPECT_EQ(rc.events[2].field("exact"), argus().schedule().immediate(1).str());
}

TEST_F(ContractFixture, SecondInformerGetsSecondSlot) {
    deploy();
    commit("I1", 2, 5);
    commit("I2", 2, 5);
    led.advance_period();
    ok(reveal("I1", 2, 5));
    ok(reveal("I2", 2, 5));
    EXPECT_EQ(argus().licensee(2).report_number, 2u);
    EXPECT_EQ(led.balance("I2"), argus().schedule().immediate(2));
    EXPECT_LT(led.balance("I2"), led.balance("I1"));
}

TEST_F(ContractFixture, DuplicateInformerRejected) {
    deploy();
    commit("I1", 1, 1);
    commit("I1", 1, 2);
    led.advance_period();
    ok(reveal("I1", 1, 1));
    EXPECT_EQ(reveal("I1", 1, 2).error, "informer already reported this licensee");
    EXPECT_EQ(argus().licensee(1).report_number, 1u);
}

TEST_F(ContractFixture, ReplayedRevealRejected) {
    deploy();
    commit("I1", 1, 4);
    led.advance_period();
    ok(reveal("I1", 1, 4));
    // Same rv1 under another name has no commitment.
    EXPECT_EQ(reveal("thief", 1, 4, 1).error, "no matching commitment");
    // Recommitting the seen (x, y) does not help: rv1 is bound to period 1.
    StoreCall s;
    s.kind = StoreKind::Cm;
    s.digest = commitment::commit_digest(merkle::id_reveal(ids[0][3], 1), as_bytes("thief"));
    s.x = 1;
    s.y = 4;
    ok(led.submit("thief", "argus", "store", s.encode()));
    led.advance_period();
    ReportCall r;
    r.rv1 = merkle::id_reveal(ids[0][3], 1);
    r.path = store->query(1, 4, 1, ids[0][3]);
    r.informer = "thief";
    EXPECT_EQ(led.submit("thief", "argus", "report", r.encode()).error, "path does not sit at the reveal timestamp");
    // A consumed commitment cannot be reused.
    EXPECT_EQ(reveal("I1", 1, 4, 1).status, TxStatus::Reverted);
}

TEST_F(ContractFixture, ForgedPathRejected) {
    deploy();
    commit("I1", 1, 2);
    led.advance_period();
    ReportCall r;
    r.rv1 = merkle::id_reveal(ids[0][1], 1);
    r.path = store->query(1, 2, 1, ids[0][1]);
    r.path.siblings.back().bytes[0] ^= 1;
    r.informer = "I1";
    EXPECT_EQ(led.submit("I1", "argus", "report", r.encode()).status, TxStatus::Reverted);
    EXPECT_EQ(argus().licensee(1).status, Status::Normal);
}

TEST_F(ContractFixture, AppealExoneratesWithOtherVersion) {
    deploy();
    commit("I1", 1, 3);
    led.advance_period();
    ok(reveal("I1", 1, 3));
    EXPECT_EQ(appeal(1, 3).error, "chosen index equals the leaked version");
    EXPECT_EQ(appeal(1, 5, "licensee-2").error, "only the accused licensee may appeal");
    EXPECT_EQ(appeal(2, 5).error, "licensee is not accused");
    const auto rc = appeal(1, 5);
    ok(rc);
    EXPECT_EQ(argus().licensee(1).status, Status::Exonerated);
    EXPECT_EQ(rc.events.at(0).name, "Exonerated");
    EXPECT_EQ(set_guilty(1).error, "licensee is not accused");
}

TEST_F(ContractFixture, AppealWithMismatchedRecordFails) {
    deploy();
    commit("I1", 1, 3);
    led.advance_period();
    ok(reveal("I1", 1, 3));
    // Evidence for l = 5, claimed as l = 6.
    const auto rec = ot::choose(ot.params, 5, rng);
    const auto ev = ot::generate_evidence(ot.params, *ot.secret, rec, lics[0].secret, lics[0].pub, owner.secret);
    AppealCall a;
    a.x = 1;
    a.sub = ot::make_appeal(ev, rec);
    a.sub.l = 6;
    EXPECT_EQ(led.submit("licensee-1", "argus", "appeal", a.encode(*group)).error, "P_l - r*G does not equal R");
    // Evidence the owner never countersigned.
    a.sub = ot::make_appeal(ev, rec);
    a.sub.sig_owner = crypto::sign(lics[0].secret, ev.r_point.encoding);
    EXPECT_EQ(led.submit("licensee-1", "argus", "appeal", a.encode(*group)).error, "evidence signatures invalid");
}

TEST_F(ContractFixture, AppealWindowAndGuilty) {
    deploy();
    commit("I1", 2, 1);
    led.advance_period();  // T = 2
    ok(reveal("I1", 2, 1));
    led.advance_period();  // T = 3
    EXPECT_EQ(set_guilty(2).error, "appeal window still open");
    led.advance_period();  // T = 4, window closed (report_time 1, timeout 2)
    EXPECT_EQ(appeal(2, 4).error, "appeal window closed");
    const auto rc = set_guilty(2);
    ok(rc);
    EXPECT_EQ(rc.events.at(0).name, "Guilty");
    EXPECT_EQ(argus().licensee(2).status, Status::Guilty);
}

TEST_F(ContractFixture, DeferredBountyAndAllocationFreeze) {
    deploy();
    commit("I1", 1, 7);
    led.advance_period();
    ok(reveal("I1", 1, 7));
    EXPECT_EQ(allocate("I1", 1).error, "campaign has not ended");
    while (led.time() < kK) led.advance_period();
    commit("late", 1, 7);
    const Money before = led.balance("I1");
    ok(allocate("I1", 1));
    EXPECT_EQ(led.balance("I1") - before, argus().schedule().deferred(1));
    EXPECT_EQ(allocate("I1", 1).error, "not an unpaid informer of this licensee");
    EXPECT_EQ(allocate("stranger", 1).status, TxStatus::Reverted);
    led.advance_period();
    EXPECT_EQ(reveal("late", 1, 7).error, "bounty allocation already started for this licensee");
    EXPECT_EQ(argus().licensee(1).paid, argus().schedule().reward(1, 1));
    EXPECT_EQ(led.total_supply(), Money(10) * 1000000);
}

TEST_F(ContractFixture, PeriodsExhausted) {
    deploy();
    while (led.time() < kK + 1) led.advance_period();
    StoreCall s;
    s.kind = StoreKind::Cm;
    s.digest = commitment::commit_digest(merkle::id_reveal(ids[0][0], kK + 1), as_bytes("I1"));
    s.x = s.y = 1;
    ok(led.submit("I1", "argus", "store", s.encode()));
    led.advance_period();
    ReportCall r;
    r.rv1 = merkle::id_reveal(ids[0][0], kK + 1);
    r.path = store->query(1, 1, kK, ids[0][0]);
    r.informer = "I1";
    EXPECT_EQ(led.submit("I1", "argus", "report", r.encode()).error, "campaign periods exhausted");
}

TEST_F(ContractFixture, PRootModeNeedsProof) {
    deploy(true);
    EXPECT_TRUE(argus().p_list().empty());
    ASSERT_TRUE(argus().p_root().has_value());
    commit("I1", 1, 2);
    led.advance_period();
    ok(reveal("I1", 1, 2));
    // Without a proof the appeal cannot resolve P_l.
    const auto rec = ot::choose(ot.params, 6, rng);
    const auto ev = ot::generate_evidence(ot.params, *ot.secret, rec, lics[0].secret, lics[0].pub, owner.secret);
    AppealCall a;
    a.x = 1;
    a.sub = ot::make_appeal(ev, rec);
    EXPECT_EQ(led.submit("licensee-1", "argus", "appeal", a.encode(*group)).error, "P root mode needs an inclusion proof");
    a.p_proof = PointProof{ot.params.point(7), p_tree().prove(6)};
    EXPECT_EQ(led.submit("licensee-1", "argus", "appeal", a.encode(*group)).error, "proof is for another index");
    ok(appeal(1, 6));
    EXPECT_EQ(argus().licensee(1).status, Status::Exonerated);
}

TEST_F(ContractFixture, BaselineAppealDisabledByDefault) {
    deploy();
    EXPECT_EQ(led.submit("licensee-1", "argus", "appeal_baseline", {}).error, "baseline appeal disabled");
}

TEST_F(ContractFixture, CachedTruncatedPathsAccepted) {
    deploy();
    commit("I1", 1, 3);
    commit("I2", 1, 3);
    led.advance_period();
    const auto first = reveal("I1", 1, 3);
    ok(first);
    // Second report on the same copy: truncate at the cached layer-2 root.
    ReportCall r;
    r.rv1 = merkle::id_reveal(ids[0][2], 1);
    r.path = store->query(1, 3, 1, ids[0][2]);
    r.path.siblings.resize(store->shape().layer2_height());
    r.informer = "I2";
    const auto second = led.submit("I2", "argus", "report", r.encode());
    ok(second);
    EXPECT_LT(second.meter.hashes, first.meter.hashes);
}
