#include <gtest/gtest.h>

#include "argus/rng.hpp"
#include "argus/commitment/commitment.hpp"

using namespace argus;
using namespace argus::commitment;

TEST(Commitment, HonestRevealAccepted) {
    const Bytes secret = from_hex("00112233445566778899aabbccddeeff");
    const auto tags = build_tag_list(secret, 8);
    ASSERT_EQ(tags.size(), 8u);
    for (std::uint32_t t = 1; t <= 7; ++t) {
        const auto cm = commit(secret, t, as_bytes("informer"));
        EXPECT_TRUE(verify_reveal(cm, open(secret, t, as_bytes("informer")), tags, t, t + 1)) << t;
    }
}

TEST(Commitment, TagsMatchRevealHashes) {
    const Bytes secret = {1, 2, 3};
    const auto tags = build_tag_list(secret, 4);
    for (std::uint32_t t = 1; t <= 4; ++t) EXPECT_EQ(tags[t - 1], crypto::sha256(reveal_value(secret, t).view()));
}

TEST(Commitment, ReplayInAnyLaterPeriodRejected) {
    for (std::uint32_t k = 2; k <= 16; ++k) {
        const Bytes secret = {static_cast<std::uint8_t>(k), 9, 9};
        const auto tags = build_tag_list(secret, k);
        for (std::uint32_t t = 1; t < k; ++t) {
            const auto cm = commit(secret, t, as_bytes("honest"));
            const auto rv = open(secret, t, as_bytes("honest"));
            // Copying the revealed value into a later period fails either
            // because the timing is off or because the attacker's nonce
            // does not reproduce any recorded commitment.
            for (std::uint32_t later = t + 2; later <= k + 1; ++later) {
                EXPECT_FALSE(verify_reveal(cm, rv, tags, t, later)) << k << ' ' << t << ' ' << later;
            }
            const Commitment forged{commit_digest(rv.rv, as_bytes("attacker")), t + 1};
            for (std::uint32_t claimed = 1; claimed <= k; ++claimed) {
                EXPECT_FALSE(verify_reveal(forged, Reveal{rv.rv, Bytes{0x61, 0x74, 0x74, 0x61, 0x63, 0x6b, 0x65, 0x72}}, tags, claimed, t + 2));
            }
        }
    }
}

TEST(Commitment, WrongNonceOrPeriodRejected) {
    const Bytes secret = {4, 5, 6};
    const auto tags = build_tag_list(secret, 5);
    const auto cm = commit(secret, 2, as_bytes("a"));
    EXPECT_FALSE(verify_reveal(cm, open(secret, 2, as_bytes("b")), tags, 2, 3));
    EXPECT_FALSE(verify_reveal(cm, open(secret, 3, as_bytes("a")), tags, 2, 3));
    EXPECT_FALSE(verify_reveal(cm, open(secret, 2, as_bytes("a")), tags, 3, 4));
    EXPECT_FALSE(verify_reveal(cm, open(secret, 2, as_bytes("a")), tags, 2, 2));
    EXPECT_THROW(commit(secret, 0, as_bytes("a")), std::invalid_argument);
}

TEST(Commitment, ConfirmationBound) {
    const PeriodLayout layout{180ULL * 24 * 3600, 1000};
    const auto b = confirmation_bound(layout);
    EXPECT_EQ(b.period_hours, Money(432) / 100);
    EXPECT_EQ(b.worst_case_hours, Money(864) / 100);
    EXPECT_THROW((PeriodLayout{0, 10}.validate()), ConfigError);
    EXPECT_THROW((PeriodLayout{100, 1}.validate()), ConfigError);
}
