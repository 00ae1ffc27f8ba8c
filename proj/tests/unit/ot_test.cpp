#include <gtest/gtest.h>

#include "argus/rng.hpp"
#include "argus/ot/ot_appeal.hpp"

using namespace argus;
using namespace argus::ot;

namespace {

struct Session {
    std::shared_ptr<const Group> group;
    crypto::KeyPair owner, licensee;
    Initialized init;

    Session(const std::string& backend, std::uint32_t n, std::uint64_t seed) : group(crypto::make_group(backend)) {
        Rng rng(seed);
        owner = crypto::KeyPair::generate(rng);
        licensee = crypto::KeyPair::generate(rng);
        init = initialize(group, n, rng, owner.secret);
    }
    OtEvidence evidence(const OtRecord& rec) {
        return generate_evidence(init.params, *init.secret, rec, licensee.secret, licensee.pub, owner.secret);
    }
};

std::vector<Bytes> payloads(std::uint32_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Bytes> out;
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(rng.bytes(20 + i % 7));
    return out;
}

}  // namespace

TEST(Ot, ParamsSignedAndChecked) {
    Session s("tiny", 8, 1);
    EXPECT_TRUE(verify_params(s.init.params, s.owner.pub));
    EXPECT_FALSE(verify_params(s.init.params, s.licensee.pub));
    auto tampered = s.init.params;
    std::swap(tampered.points[0], tampered.points[1]);
    EXPECT_FALSE(verify_params(tampered, s.owner.pub));
    Rng rng(1);
    EXPECT_THROW(initialize(s.group, 1, rng, s.owner.secret), std::invalid_argument);
}

TEST(Ot, EveryChoiceRecoversItsPayloadOnly) {
    for (const char* backend : {"tiny", "secure"}) {
        const std::uint32_t n = backend == std::string("tiny") ? 16 : 4;
        Session s(backend, n, 2);
        const auto data = payloads(n, 3);
        Rng rng(4);
        std::size_t width = 0;
        for (const auto& d : data) width = std::max(width, d.size());
        for (std::uint32_t l = 1; l <= n; ++l) {
            // The tiny group repeats R often; draw again like a licensee would.
            auto rec = choose(s.init.params, l, rng);
            while (s.init.secret->has_evidence(evidence_point(s.init.params, rec))) rec = choose(s.init.params, l, rng);
            const auto ev = s.evidence(rec);
            const auto e = transfer(s.init.params, *s.init.secret, ev, s.licensee.pub, s.owner.pub, data);
            ASSERT_EQ(e.size(), n);
            auto expect = data[l - 1];
            expect.resize(width, 0);
            EXPECT_EQ(receive(s.init.params, e, rec), expect);
            const auto q = s.group->mul(rec.r, s.init.params.a_s);
            for (std::uint32_t j = 1; j <= n; ++j) {
                // Equal points (order-101 group only) share a key by construction.
                if (j == l || s.init.params.point(j) == s.init.params.point(l)) continue;
                EXPECT_FALSE(try_open(s.init.params, e[j - 1], j, q).has_value()) << backend << ' ' << l << ' ' << j;
            }
        }
    }
}

TEST(Ot, CountersignRejectsBadSignatureAndReuse) {
    Session s("tiny", 4, 5);
    Rng rng(6);
    const auto rec = choose(s.init.params, 2, rng);
    auto req = request_evidence(s.init.params, rec, s.licensee.secret);
    EXPECT_THROW(countersign(s.init.params, *s.init.secret, req, s.owner.pub, s.owner.secret), ProtocolError);
    const auto ev = countersign(s.init.params, *s.init.secret, req, s.licensee.pub, s.owner.secret);
    EXPECT_TRUE(verify_evidence(ev, s.licensee.pub, s.owner.pub));
    EXPECT_TRUE(s.init.secret->has_evidence(ev.r_point));
    EXPECT_THROW(countersign(s.init.params, *s.init.secret, req, s.licensee.pub, s.owner.secret), ProtocolError);
}

TEST(Ot, TransferRefusesUnregisteredEvidence) {
    Session s("tiny", 4, 7);
    Session other("tiny", 4, 7);
    Rng rng(8);
    const auto rec = choose(s.init.params, 1, rng);
    const auto ev = s.evidence(rec);
    // Same keys and points, but this owner never co-signed R.
    EXPECT_THROW(transfer(other.init.params, *other.init.secret, ev, s.licensee.pub, s.owner.pub, payloads(4, 1)),
                 ProtocolError);
}

TEST(Ot, Framing) {
    const Bytes d = {1, 2, 3};
    auto f = frame(d);
    EXPECT_EQ(f.size(), d.size() + kChecksumBytes);
    EXPECT_EQ(unframe(f), d);
    f[0] ^= 1;
    EXPECT_THROW(unframe(f), DecodeError);
}

TEST(Appeal, VerdictCases) {
    Session s("tiny", 10, 9);
    Rng rng(10);
    const auto rec = choose(s.init.params, 4, rng);
    const auto ev = s.evidence(rec);
    const auto sub = make_appeal(ev, rec);
    const auto& p = s.init.params;
    EXPECT_EQ(appeal_verdict(p, sub, s.licensee.pub, s.owner.pub, 7), Verdict::FalselyAccused);
    EXPECT_EQ(appeal_verdict(p, sub, s.licensee.pub, s.owner.pub, 4), Verdict::AppealFails);

    auto lie = sub;
    lie.l = 5;  // claims another index with the same r
    EXPECT_EQ(appeal_verdict(p, lie, s.licensee.pub, s.owner.pub, 4), Verdict::AppealFails);
    auto forged = sub;
    forged.sig_owner = crypto::sign(s.licensee.secret, as_bytes("x"));
    EXPECT_EQ(appeal_verdict(p, forged, s.licensee.pub, s.owner.pub, 7), Verdict::AppealFails);
    auto out_of_range = sub;
    out_of_range.l = 11;
    EXPECT_EQ(appeal_verdict(p, out_of_range, s.licensee.pub, s.owner.pub, 7), Verdict::AppealFails);
}

TEST(Appeal, SubmissionSizeIndependentOfN) {
    std::size_t size = 0;
    for (std::uint32_t n : {10u, 100u, 1000u}) {
        Session s("tiny", n, 11);
        Rng rng(12);
        const auto rec = choose(s.init.params, n / 2, rng);
        const auto enc = make_appeal(s.evidence(rec), rec).encode(*s.group);
        if (size == 0) size = enc.size();
        EXPECT_EQ(enc.size(), size) << n;
        const auto back = AppealSubmission::decode(*s.group, enc);
        EXPECT_EQ(back.l, rec.l);
        EXPECT_EQ(back.r, rec.r);
    }
}

TEST(Appeal, BaselineCarriesTranscript) {
    Session s("tiny", 6, 13);
    Rng rng(14);
    const auto rec = choose(s.init.params, 3, rng);
    const auto ev = s.evidence(rec);
    const auto e = transfer(s.init.params, *s.init.secret, ev, s.licensee.pub, s.owner.pub, payloads(6, 2));
    BaselineAppeal b{make_appeal(ev, rec), e, crypto::sign(s.owner.secret, transcript_digest(e).view())};
    const auto back = BaselineAppeal::decode(*s.group, b.encode(*s.group));
    EXPECT_EQ(back.transcript, e);
    EXPECT_EQ(back.transcript_sig, b.transcript_sig);
    EXPECT_GT(b.encode(*s.group).size(), make_appeal(ev, rec).encode(*s.group).size() + 6 * e[0].size());
}
