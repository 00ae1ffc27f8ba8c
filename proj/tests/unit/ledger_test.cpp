#include <gtest/gtest.h>

#include "argus/rng.hpp"
#include "argus/ledger/ledger.hpp"

using namespace argus;
using namespace argus::ledger;

namespace {

// Counter with a payout; "boom" reverts after mutating and paying.
class Toy final : public Contract {
public:
    int counter = 0;

    std::unique_ptr<Contract> clone() const override { return std::make_unique<Toy>(*this); }
    void call(CallContext& ctx, const std::string& fn, ByteView data) override {
        ctx.meter().hash(data.size());
        if (fn == "inc") {
            ++counter;
            ctx.meter().writes_update += 1;
            ctx.emit({"Inc", {{"n", std::to_string(counter)}}});
            return;
        }
        if (fn == "pay") {
            ctx.pay(ctx.caller(), ctx.self_balance());
            return;
        }
        if (fn == "boom") {
            ++counter;
            ctx.pay(ctx.caller(), 1);
            throw Revert("boom");
        }
        throw Revert("unknown");
    }
};

const Toy& toy(const Ledger& l) { return static_cast<const Toy&>(l.contract("toy")); }

}  // namespace

TEST(Ledger, ClockStartsAtOne) {
    Ledger l;
    EXPECT_EQ(l.time(), 1u);
    l.advance_period();
    EXPECT_EQ(l.time(), 2u);
}

TEST(Ledger, GasFormula) {
    GasSchedule s;
    Ledger l(s);
    l.register_contract("toy", std::make_unique<Toy>());
    const Bytes data(40, 1);
    const auto rc = l.submit("alice", "toy", "inc", data);
    ASSERT_EQ(rc.status, TxStatus::Ok);
    EXPECT_EQ(rc.gas_used, s.base_tx + 40 * s.per_calldata_byte + s.per_hash + 2 * s.per_hash_word + s.storage_write_update);
    EXPECT_EQ(rc.calldata, data);
    EXPECT_EQ(rc.period, 1u);
    EXPECT_EQ(rc.events.at(0).field("n"), "1");
}

TEST(Ledger, RevertRestoresStateAndBalances) {
    Ledger l;
    l.register_contract("toy", std::make_unique<Toy>());
    l.credit("alice", 10);
    ASSERT_EQ(l.submit("alice", "toy", "inc", {}, 5).status, TxStatus::Ok);
    const auto rc = l.submit("alice", "toy", "boom", {}, 2);
    EXPECT_EQ(rc.status, TxStatus::Reverted);
    EXPECT_EQ(rc.error, "boom");
    EXPECT_GT(rc.gas_used, 0u);
    EXPECT_TRUE(rc.events.empty());
    EXPECT_EQ(toy(l).counter, 1);
    EXPECT_EQ(l.balance("alice"), Money(5));
    EXPECT_EQ(l.balance("toy"), Money(5));
    EXPECT_EQ(l.total_supply(), Money(10));
}

TEST(Ledger, ValueAndPayouts) {
    Ledger l;
    l.register_contract("toy", std::make_unique<Toy>());
    l.credit("bob", 3);
    EXPECT_EQ(l.submit("bob", "toy", "inc", {}, 4).status, TxStatus::Reverted);  // insufficient
    EXPECT_EQ(l.submit("bob", "toy", "inc", {}, 3).status, TxStatus::Ok);
    EXPECT_EQ(l.submit("carol", "toy", "pay", {}).status, TxStatus::Ok);
    EXPECT_EQ(l.balance("carol"), Money(3));
    EXPECT_FALSE(l.transfer("bob", "carol", 1));
    EXPECT_FALSE(l.transfer("carol", "bob", -1));
    EXPECT_TRUE(l.transfer("carol", "bob", 1));
    EXPECT_EQ(l.total_supply(), Money(3));
}

TEST(Ledger, RegistrationAndLookup) {
    Ledger l;
    l.register_contract("toy", std::make_unique<Toy>());
    EXPECT_THROW(l.register_contract("toy", std::make_unique<Toy>()), ConfigError);
    EXPECT_THROW((void)l.contract("nope"), NotFoundError);
    const auto rc = l.submit("a", "nope", "inc", {});
    EXPECT_EQ(rc.status, TxStatus::Reverted);
}

TEST(Ledger, ReceiptsAreOrdered) {
    Ledger l;
    l.register_contract("toy", std::make_unique<Toy>());
    for (int i = 0; i < 5; ++i) l.submit("a", "toy", i % 2 ? "boom" : "inc", {});
    ASSERT_EQ(l.tx_log().size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(l.tx_log()[i].tx_id, i + 1);
}
