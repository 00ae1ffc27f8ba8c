#include "argus/cli/bench.hpp"

#include <chrono>

#include <fmt/format.h>

#include "argus/actors/actors.hpp"
#include "argus/commitment/commitment.hpp"
#include "argus/pir/pir.hpp"

namespace argus::cli {

using contract::StoreCall;
using contract::StoreKind;

const char* to_string(contract::CachePolicy p) {
    switch (p) {
        case contract::CachePolicy::None: return "none";
        case contract::CachePolicy::Checkpoints: return "checkpoints";
        case contract::CachePolicy::All: return "all";
    }
    return "?";
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void expect_ok(const ledger::Receipt& rc) {
    if (rc.status != ledger::TxStatus::Ok) throw ProtocolError(fmt::format("{} reverted: {}", rc.function, rc.error));
}

}  // namespace

AppealPoint measure_appeal(std::uint32_t n, std::uint64_t seed, const std::string& backend, const ledger::GasSchedule& gas) {
    Rng rng(seed);
    auto group = crypto::make_group(backend);
    auto krng = rng.fork("keys");
    const auto owner = crypto::KeyPair::generate(krng);
    const auto lic = crypto::KeyPair::generate(krng);
    auto irng = rng.fork("init");
    auto init = ot::initialize(group, n, irng, owner.secret);
    const auto& params = init.params;

    auto crng = rng.fork("choice");
    const auto l = static_cast<std::uint32_t>(crng.uniform_range(1, n));
    const auto record = ot::choose(params, l, crng);
    const auto ev = ot::generate_evidence(params, *init.secret, record, lic.secret, lic.pub, owner.secret);

    // Key-only transcript, as in the hybrid pipeline.
    auto drng = rng.fork("keys-payload");
    std::vector<Bytes> keys;
    for (std::uint32_t i = 0; i < n; ++i) keys.push_back(drng.bytes(pir::kKeyBytes));
    const auto e = ot::transfer(params, *init.secret, ev, lic.pub, owner.pub, keys);

    // Licensee 1 is framed at a version other than its choice.
    auto id_rng = rng.fork("ids");
    std::vector<std::vector<Bytes>> ids(1);
    for (std::uint32_t y = 0; y < n; ++y) ids[0].push_back(id_rng.bytes(16));
    const auto store = merkle::id_tree_build(ids, 2);
    const std::uint32_t framed = l % n + 1;

    auto accused_ledger = [&](ledger::Ledger& ledger) {
        contract::ArgusConfig cc;
        cc.owner = "owner";
        cc.owner_pk = owner.pub;
        cc.licensees = {"licensee-1"};
        cc.licensee_pks = {lic.pub};
        cc.group = group;
        cc.a_s = params.a_s;
        cc.shape = store.shape();
        cc.baseline_appeal = true;
        ledger.register_contract(actors::kContractAddress, std::make_unique<contract::ArgusContract>(std::move(cc)));
        for (std::size_t i = 0; i < n; i += 256) {
            StoreCall c;
            c.kind = StoreKind::PBatch;
            c.points.assign(params.points.begin() + static_cast<std::ptrdiff_t>(i),
                            params.points.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(n, i + 256)));
            expect_ok(ledger.submit("owner", actors::kContractAddress, "store", c.encode()));
        }
        StoreCall rt;
        rt.kind = StoreKind::Rt;
        rt.digest = store.root();
        expect_ok(ledger.submit("owner", actors::kContractAddress, "store", rt.encode()));
        ledger.credit("owner", 1000000);
        expect_ok(ledger.submit("owner", actors::kContractAddress, "deposit", {}, 1000000));

        const auto& id = ids[0][framed - 1];
        const auto rv1 = merkle::id_reveal(id, 1);
        StoreCall cm;
        cm.kind = StoreKind::Cm;
        cm.digest = commitment::commit_digest(rv1, as_bytes("shill"));
        cm.x = 1;
        cm.y = framed;
        expect_ok(ledger.submit("shill", actors::kContractAddress, "store", cm.encode()));
        ledger.advance_period();
        expect_ok(actors::submit_report(ledger, rv1, store.query(1, framed, 1, id), "shill"));
    };

    AppealPoint out;
    out.n = n;
    {
        ledger::Ledger ledger(gas);
        accused_ledger(ledger);
        contract::AppealCall c;
        c.x = 1;
        c.sub = ot::make_appeal(ev, record);
        const auto rc = ledger.submit("licensee-1", actors::kContractAddress, "appeal", c.encode(*group));
        out.argus_bytes = rc.calldata_bytes;
        out.argus_gas = rc.gas_used;
        out.argus_ok = rc.status == ledger::TxStatus::Ok;
    }
    {
        ledger::Ledger ledger(gas);
        accused_ledger(ledger);
        contract::BaselineAppealCall c;
        c.x = 1;
        c.appeal.core = ot::make_appeal(ev, record);
        c.appeal.transcript = e;
        c.appeal.transcript_sig = crypto::sign(owner.secret, ot::transcript_digest(e).view());
        const auto rc = ledger.submit("licensee-1", actors::kContractAddress, "appeal_baseline", c.encode(*group));
        out.baseline_bytes = rc.calldata_bytes;
        out.baseline_gas = rc.gas_used;
        out.baseline_ok = rc.status == ledger::TxStatus::Ok;
    }
    return out;
}

LatencyPoint measure_ot_latency(std::uint32_t n, std::uint64_t seed, const std::string& backend) {
    Rng rng(seed);
    auto group = crypto::make_group(backend);
    auto krng = rng.fork("keys");
    const auto owner = crypto::KeyPair::generate(krng);
    const auto lic = crypto::KeyPair::generate(krng);
    std::vector<Bytes> keys;
    auto drng = rng.fork("payload");
    for (std::uint32_t i = 0; i < n; ++i) keys.push_back(drng.bytes(pir::kKeyBytes));

    LatencyPoint out;
    out.n = n;
    auto t0 = std::chrono::steady_clock::now();
    auto irng = rng.fork("init");
    auto init = ot::initialize(group, n, irng, owner.secret);
    out.owner_init_ms = ms_since(t0);

    auto crng = rng.fork("choice");
    const auto record = ot::choose(init.params, static_cast<std::uint32_t>(crng.uniform_range(1, n)), crng);
    const auto ev = ot::generate_evidence(init.params, *init.secret, record, lic.secret, lic.pub, owner.secret);

    t0 = std::chrono::steady_clock::now();
    const auto e = ot::transfer(init.params, *init.secret, ev, lic.pub, owner.pub, keys);
    out.owner_transfer_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto got = ot::receive(init.params, e, record);
    out.licensee_receive_ms = ms_since(t0);
    if (got != keys[record.l - 1]) throw ProtocolError("OT returned the wrong key");
    return out;
}

CachingPoint measure_caching(contract::CachePolicy policy, std::uint32_t n, std::uint32_t k, std::uint32_t reports,
                             std::uint64_t seed, const ledger::GasSchedule& gas) {
    actors::CampaignConfig cfg;
    cfg.n_versions = n;
    cfg.k_periods = k;
    cfg.m_licensees = 2;
    cfg.cache = policy;
    cfg.gas = gas;
    constexpr std::uint32_t kRounds = 5;
    if (k < kRounds + 1) throw ConfigError("caching bench needs K >= 6");

    Rng root(seed);
    ledger::Ledger ledger(gas);
    actors::OwnerActor owner(cfg, crypto::make_group(cfg.backend), root.fork("owner"));
    std::vector<actors::LicenseeActor> lics;
    for (std::uint32_t x = 1; x <= cfg.m_licensees; ++x) {
        lics.emplace_back(x, actors::LicenseeStrategy::Leaker, root.fork(fmt::format("licensee-{}", x)));
    }
    ledger.credit(owner.address(), cfg.v * static_cast<long>(cfg.m_licensees));
    owner.initiate(ledger, {lics[0].address(), lics[1].address()}, {lics[0].keys().pub, lics[1].keys().pub});
    lics[0].acquire(owner);

    std::vector<actors::InformerActor> informers;
    for (std::uint32_t j = 1; j <= reports; ++j) {
        const auto name = fmt::format("I{}", j);
        informers.emplace_back(actors::InformerSpec{actors::InformerKind::Honest, 1, name}, root.fork(name));
    }
    CachingPoint out;
    out.n = n;
    out.k = k;
    out.policy = policy;
    out.reports = reports;
    auto tally = [&](const std::vector<ledger::Receipt>& rcs) {
        for (const auto& rc : rcs) {
            out.gas += rc.gas_used;
            out.hash_ops += rc.meter.hashes;
            out.merkle_hash_ops += rc.meter.hashes - 2;
            if (rc.status == ledger::TxStatus::Ok) ++out.accepted;
        }
    };
    const std::uint32_t per_round = (reports + kRounds - 1) / kRounds;
    for (std::uint32_t r = 0; r <= kRounds; ++r) {
        for (std::uint32_t j = 0; j < reports; ++j) {
            if (j / per_round + 1 == r) tally(informers[j].reveal(ledger, owner, owner.id_store().shape()));
        }
        if (r == kRounds) break;
        for (std::uint32_t j = 0; j < reports; ++j) {
            if (j / per_round == r) informers[j].commit(ledger, owner, lics[0].copy(), cfg.segments(), cfg.id_bytes());
        }
        ledger.advance_period();
    }
    return out;
}

BandwidthPoint measure_bandwidth(std::uint32_t n, std::size_t payload_bytes, std::uint64_t seed, const std::string& backend) {
    Rng rng(seed);
    auto group = crypto::make_group(backend);
    auto krng = rng.fork("keys");
    const auto owner = crypto::KeyPair::generate(krng);
    const auto lic = crypto::KeyPair::generate(krng);
    auto irng = rng.fork("init");
    auto init = ot::initialize(group, n, irng, owner.secret);
    std::vector<Bytes> payloads;
    auto drng = rng.fork("payload");
    for (std::uint32_t i = 0; i < n; ++i) payloads.push_back(drng.bytes(payload_bytes));

    BandwidthPoint out;
    out.n = n;
    out.payload_bytes = payload_bytes;
    {
        auto crng = rng.fork("hybrid-choice");
        const auto record = ot::choose(init.params, static_cast<std::uint32_t>(crng.uniform_range(1, n)), crng);
        const auto ev = ot::generate_evidence(init.params, *init.secret, record, lic.secret, lic.pub, owner.secret);
        auto hrng = rng.fork("hybrid");
        const auto hybrid = pir::prepare_hybrid(payloads, hrng);
        auto prng = rng.fork("pir");
        const auto res = pir::hybrid_share(init.params, *init.secret, ev, lic.pub, owner.pub, hybrid, record, prng);
        out.hybrid_received = res.ledger.received("licensee");
        out.hybrid_ok = res.payload == payloads[record.l - 1];
    }
    {
        auto crng = rng.fork("direct-choice");
        const auto record = ot::choose(init.params, static_cast<std::uint32_t>(crng.uniform_range(1, n)), crng);
        const auto ev = ot::generate_evidence(init.params, *init.secret, record, lic.secret, lic.pub, owner.secret);
        const auto res = pir::direct_share(init.params, *init.secret, ev, lic.pub, owner.pub, payloads, record);
        out.direct_received = res.ledger.received("licensee");
        out.direct_ok = res.payload == payloads[record.l - 1];
    }
    return out;
}

}  // namespace argus::cli
