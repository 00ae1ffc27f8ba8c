#include "argus/actors/actors.hpp"

#include <fmt/format.h>

#include "argus/commitment/commitment.hpp"
#include "argus/contract/calls.hpp"

namespace argus::actors {

using contract::StoreCall;
using contract::StoreKind;

void CampaignConfig::validate() const {
    if (lambda < 8 || lambda > 256 || lambda % 8 != 0) throw ConfigError("lambda must be a multiple of 8 in [8, 256]");
    if (n_versions < 2) throw ConfigError("need at least two versions (N >= 2)");
    if (m_licensees < 1) throw ConfigError("need at least one licensee");
    if (k_periods < 2) throw ConfigError("need at least two periods (K >= 2)");
    if (v <= 0) throw ConfigError("per-licensee deposit v must be positive");
    if (guarantee_len < 0) throw ConfigError("guarantee_len must be nonnegative");
    if (n_versions > (1u << 20)) throw ConfigError("N exceeds 2^20 segment versions");
    if (p_batch == 0) throw ConfigError("p_batch must be positive");
    if (backend != "tiny" && backend != "secure") throw ConfigError("backend must be tiny or secure");
    const std::size_t need = static_cast<std::size_t>(segments()) * watermark::kMarkRegion;
    const std::size_t have = asset.empty() ? asset_bytes : asset.size();
    if (have != 0 && have < need) throw ConfigError(fmt::format("asset needs at least {} bytes for {} segments", need, segments()));
}

const contract::ArgusContract& argus(const ledger::Ledger& ledger) {
    return static_cast<const contract::ArgusContract&>(ledger.contract(kContractAddress));
}

OwnerActor::OwnerActor(const CampaignConfig& cfg, std::shared_ptr<const crypto::Group> group, Rng rng)
    : cfg_(cfg), group_(std::move(group)), rng_(rng) {
    auto key_rng = rng_.fork("owner-key");
    keys_ = crypto::KeyPair::generate(key_rng);
}

void OwnerActor::initiate(ledger::Ledger& ledger, const std::vector<Address>& licensees,
                          const std::vector<crypto::GroupPoint>& licensee_pks) {
    cfg_.validate();
    if (licensees.size() != cfg_.m_licensees || licensee_pks.size() != cfg_.m_licensees) {
        throw ConfigError("licensee count does not match M");
    }
    const auto segs = cfg_.segments();
    watermark::Asset asset;
    asset.segments = segs;
    if (!cfg_.asset.empty()) {
        asset.payload = cfg_.asset;
    } else {
        auto arng = rng_.fork("asset");
        const std::size_t n = cfg_.asset_bytes != 0 ? cfg_.asset_bytes : 2 * segs * watermark::kMarkRegion;
        asset.payload = arng.bytes(n);
    }

    // Version families and ids per licensee.
    families_.clear();
    std::vector<std::vector<Bytes>> ids(cfg_.m_licensees);
    for (std::uint32_t x = 1; x <= cfg_.m_licensees; ++x) {
        auto frng = rng_.fork(fmt::format("watermark-{}", x));
        families_.push_back(watermark::segment_generate(asset, segs, frng, cfg_.id_bytes()));
        for (std::uint32_t y = 1; y <= cfg_.n_versions; ++y) ids[x - 1].push_back(families_.back().version_id(y - 1));
    }
    store_.emplace(merkle::id_tree_build(ids, cfg_.k_periods));

    auto orng = rng_.fork("ot");
    auto init = ot::initialize(group_, cfg_.n_versions, orng, keys_.secret);
    params_ = std::move(init.params);
    secret_ = std::move(init.secret);

    contract::ArgusConfig cc;
    cc.owner = address_;
    cc.owner_pk = keys_.pub;
    cc.licensees = licensees;
    cc.licensee_pks = licensee_pks;
    cc.group = group_;
    cc.a_s = params_.a_s;
    cc.shape = store_->shape();
    cc.timeout = cfg_.timeout;
    cc.v = cfg_.v;
    cc.guarantee_len = cfg_.guarantee_len;
    cc.cache = cfg_.cache;
    cc.p_root_mode = cfg_.p_root_mode;
    cc.baseline_appeal = cfg_.baseline_appeal;
    ledger.register_contract(kContractAddress, std::make_unique<contract::ArgusContract>(std::move(cc)));

    auto expect_ok = [](const ledger::Receipt& rc) {
        if (rc.status != ledger::TxStatus::Ok) throw ProtocolError("initiate step reverted: " + rc.error);
    };
    if (cfg_.p_root_mode) {
        std::vector<crypto::Digest> leaves;
        for (const auto& p : params_.points) leaves.push_back(contract::p_leaf(p));
        StoreCall c;
        c.kind = StoreKind::PRoot;
        c.digest = merkle::MerkleTree(std::move(leaves)).root();
        expect_ok(ledger.submit(address_, kContractAddress, "store", c.encode()));
    } else {
        for (std::size_t i = 0; i < params_.points.size(); i += cfg_.p_batch) {
            StoreCall c;
            c.kind = StoreKind::PBatch;
            const auto end = std::min(params_.points.size(), i + cfg_.p_batch);
            c.points.assign(params_.points.begin() + static_cast<std::ptrdiff_t>(i),
                            params_.points.begin() + static_cast<std::ptrdiff_t>(end));
            expect_ok(ledger.submit(address_, kContractAddress, "store", c.encode()));
        }
    }
    StoreCall rt;
    rt.kind = StoreKind::Rt;
    rt.digest = store_->root();
    expect_ok(ledger.submit(address_, kContractAddress, "store", rt.encode()));
    expect_ok(ledger.submit(address_, kContractAddress, "deposit", {}, cfg_.v * static_cast<long>(cfg_.m_licensees)));
}

std::vector<Bytes> OwnerActor::versions_of(std::uint32_t x) const {
    std::vector<Bytes> out;
    out.reserve(cfg_.n_versions);
    for (std::uint32_t y = 1; y <= cfg_.n_versions; ++y) out.push_back(copy_of(x, y));
    return out;
}

ot::OtEvidence OwnerActor::countersign(const ot::EvidenceRequest& req, const crypto::GroupPoint& licensee_pk) {
    return ot::countersign(params_, *secret_, req, licensee_pk, keys_.secret);
}

pir::ShareResult OwnerActor::share(std::uint32_t x, const ot::OtEvidence& ev, const crypto::GroupPoint& licensee_pk,
                                   const ot::OtRecord& record, Rng& rng) {
    if (!cfg_.hybrid) return pir::direct_share(params_, *secret_, ev, licensee_pk, keys_.pub, versions_of(x), record);
    auto it = hybrid_.find(x);
    if (it == hybrid_.end()) {
        auto hrng = rng_.fork(fmt::format("hybrid-{}", x));
        it = hybrid_.emplace(x, pir::prepare_hybrid(versions_of(x), hrng)).first;
    }
    return pir::hybrid_share(params_, *secret_, ev, licensee_pk, keys_.pub, it->second, record, rng);
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> OwnerActor::lookup(const watermark::WatermarkId& id) const {
    return store_->lookup(merkle::id_hash(id));
}

merkle::MerklePath OwnerActor::serve_path(std::uint32_t x, std::uint32_t y, std::uint32_t t,
                                          const watermark::WatermarkId& id) const {
    return store_->query(x, y, t, id);
}

const char* to_string(LicenseeStrategy s) {
    switch (s) {
        case LicenseeStrategy::Honest: return "HONEST";
        case LicenseeStrategy::Leaker: return "LEAKER";
        case LicenseeStrategy::GuiltyAppealer: return "GUILTY_APPEALER";
    }
    return "?";
}

LicenseeStrategy parse_licensee_strategy(const std::string& s) {
    if (s == "HONEST") return LicenseeStrategy::Honest;
    if (s == "LEAKER") return LicenseeStrategy::Leaker;
    if (s == "GUILTY_APPEALER") return LicenseeStrategy::GuiltyAppealer;
    throw ConfigError("unknown licensee strategy: " + s);
}

LicenseeActor::LicenseeActor(std::uint32_t x, LicenseeStrategy strategy, Rng rng)
    : x_(x), strategy_(strategy), rng_(rng), address_(fmt::format("licensee-{}", x)) {
    auto krng = rng_.fork("key");
    keys_ = crypto::KeyPair::generate(krng);
}

void LicenseeActor::acquire(OwnerActor& owner) {
    const auto& params = owner.ot_params();
    if (!ot::verify_params(params, owner.keys().pub)) throw ProtocolError("owner's OT parameters are not signed");
    auto crng = rng_.fork("choice");
    const auto l = static_cast<std::uint32_t>(crng.uniform_range(1, params.n()));
    // Small groups can repeat R across sessions; the owner refuses a reused
    // R, so draw a fresh r a few times before giving up.
    for (int attempt = 0;; ++attempt) {
        record_ = ot::choose(params, l, crng);
        const auto req = ot::request_evidence(params, *record_, keys_.secret);
        try {
            evidence_ = owner.countersign(req, keys_.pub);
            break;
        } catch (const ProtocolError&) {
            if (attempt == 7) throw;
        }
    }
    if (!ot::verify_evidence(*evidence_, keys_.pub, owner.keys().pub)) throw ProtocolError("owner co-signature invalid");
    auto prng = rng_.fork("pir");
    auto res = owner.share(x_, *evidence_, keys_.pub, *record_, prng);
    copy_ = std::move(res.payload);
    bandwidth_ = std::move(res.ledger);
}

std::vector<ledger::Receipt> LicenseeActor::appeal(ledger::Ledger& ledger, const OwnerActor& owner) const {
    std::vector<ledger::Receipt> out;
    if (!record_ || !evidence_) return out;
    const auto& g = *owner.ot_params().group;
    auto submit = [&](const ot::OtRecord& rec) {
        contract::AppealCall c;
        c.x = x_;
        c.sub = ot::make_appeal(*evidence_, rec);
        if (argus(ledger).config().p_root_mode) {
            std::vector<crypto::Digest> leaves;
            for (const auto& p : owner.ot_params().points) leaves.push_back(contract::p_leaf(p));
            merkle::MerkleTree tree(std::move(leaves));
            const auto idx = std::clamp<std::uint32_t>(rec.l, 1, owner.ot_params().n());
            c.p_proof = contract::PointProof{owner.ot_params().point(idx), tree.prove(idx - 1)};
        }
        out.push_back(ledger.submit(address_, kContractAddress, "appeal", c.encode(g)));
    };
    submit(*record_);
    if (strategy_ == LicenseeStrategy::GuiltyAppealer && out.back().status != ledger::TxStatus::Ok) {
        // Claim a different index with the same randomness.
        ot::OtRecord forged = *record_;
        forged.l = record_->l % owner.ot_params().n() + 1;
        submit(forged);
    }
    return out;
}

const char* to_string(InformerKind k) {
    switch (k) {
        case InformerKind::Honest: return "HONEST";
        case InformerKind::Sybil: return "SYBIL";
        case InformerKind::Replayer: return "REPLAYER";
        case InformerKind::Guesser: return "GUESSER";
        case InformerKind::Silent: return "SILENT";
    }
    return "?";
}

InformerSpec parse_informer_spec(const std::string& s, const std::string& name) {
    InformerSpec spec;
    spec.name = name;
    if (s == "HONEST") return spec;
    if (s == "REPLAYER") {
        spec.kind = InformerKind::Replayer;
        return spec;
    }
    if (s == "GUESSER") {
        spec.kind = InformerKind::Guesser;
        return spec;
    }
    if (s == "SILENT") {
        spec.kind = InformerKind::Silent;
        return spec;
    }
    if (s.rfind("SYBIL(", 0) == 0 && s.back() == ')') {
        spec.kind = InformerKind::Sybil;
        try {
            const auto k = std::stoul(s.substr(6, s.size() - 7));
            if (k < 1 || k > 64) throw ConfigError("SYBIL(k) needs 1 <= k <= 64");
            spec.sybil_k = static_cast<std::uint32_t>(k);
        } catch (const std::logic_error&) {
            throw ConfigError("malformed informer strategy: " + s);
        }
        return spec;
    }
    throw ConfigError("unknown informer strategy: " + s);
}

InformerActor::InformerActor(InformerSpec spec, Rng rng) : spec_(std::move(spec)), rng_(rng) {}

std::vector<Address> InformerActor::addresses() const {
    if (spec_.kind != InformerKind::Sybil) return {spec_.name};
    std::vector<Address> out;
    for (std::uint32_t j = 1; j <= spec_.sybil_k; ++j) out.push_back(fmt::format("{}-s{}", spec_.name, j));
    return out;
}

std::vector<ledger::Receipt> InformerActor::commit(ledger::Ledger& ledger, const OwnerActor& owner, const Bytes& copy,
                                                   std::uint32_t segments, std::size_t id_bytes) {
    std::vector<ledger::Receipt> out;
    if (spec_.kind == InformerKind::Silent || spec_.kind == InformerKind::Replayer || spec_.kind == InformerKind::Guesser) {
        return out;
    }
    watermark::WatermarkId id;
    try {
        id = watermark::detect(copy, segments, id_bytes);
    } catch (const watermark::DetectionError&) {
        return out;
    }
    const auto pos = owner.lookup(id);
    if (!pos) return out;
    const std::uint32_t t = ledger.time();
    for (const auto& addr : addresses()) {
        PendingReport p{addr, id, merkle::id_reveal(id, t), pos->first, pos->second, t, false};
        StoreCall c;
        c.kind = StoreKind::Cm;
        c.digest = commitment::commit_digest(p.rv1, as_bytes(addr));
        c.x = p.x;
        c.y = p.y;
        out.push_back(ledger.submit(addr, kContractAddress, "store", c.encode()));
        pending_.push_back(std::move(p));
    }
    return out;
}

std::vector<ledger::Receipt> InformerActor::commit_guess(ledger::Ledger& ledger, const CampaignConfig& cfg) {
    std::vector<ledger::Receipt> out;
    if (spec_.kind != InformerKind::Guesser) return out;
    const std::uint32_t t = ledger.time();
    PendingReport p;
    p.address = spec_.name;
    p.id = rng_.bytes(cfg.id_bytes());
    p.rv1 = merkle::id_reveal(p.id, t);
    p.x = static_cast<std::uint32_t>(rng_.uniform_range(1, cfg.m_licensees));
    p.y = static_cast<std::uint32_t>(rng_.uniform_range(1, cfg.n_versions));
    p.period = t;
    p.fabricated = true;
    StoreCall c;
    c.kind = StoreKind::Cm;
    c.digest = commitment::commit_digest(p.rv1, as_bytes(p.address));
    c.x = p.x;
    c.y = p.y;
    out.push_back(ledger.submit(p.address, kContractAddress, "store", c.encode()));
    pending_.push_back(std::move(p));
    return out;
}

ledger::Receipt submit_report(ledger::Ledger& ledger, const crypto::Digest& rv1, const merkle::MerklePath& full_path,
                              const Address& informer) {
    contract::ReportCall c;
    c.rv1 = rv1;
    c.path = merkle::truncate_path(argus(ledger).path_cache(), full_path);
    c.informer = informer;
    return ledger.submit(informer, kContractAddress, "report", c.encode());
}

std::vector<ledger::Receipt> InformerActor::reveal(ledger::Ledger& ledger, const OwnerActor& owner,
                                                   const merkle::IdTreeShape& shape) {
    std::vector<ledger::Receipt> out;
    std::vector<PendingReport> keep;
    for (auto& p : pending_) {
        if (p.period + 1 != ledger.time()) {
            if (p.period + 1 > ledger.time()) keep.push_back(p);
            continue;
        }
        merkle::MerklePath path;
        if (p.fabricated) {
            // No owner will serve a path for a guessed id; make one up.
            path.leaf = merkle::id_leaf_from_reveal(p.rv1, p.x, p.y);
            path.index = shape.global_index(p.x, p.y, p.period);
            for (unsigned h = 0; h < shape.depth(); ++h) {
                crypto::Digest d;
                rng_.fill(d.bytes);
                path.siblings.push_back(d);
            }
        } else {
            path = owner.serve_path(p.x, p.y, p.period, p.id);
        }
        out.push_back(submit_report(ledger, p.rv1, path, p.address));
    }
    pending_ = std::move(keep);
    return out;
}

std::vector<ledger::Receipt> InformerActor::replay_now(ledger::Ledger& ledger, const ledger::Receipt& observed) {
    std::vector<ledger::Receipt> out;
    if (spec_.kind != InformerKind::Replayer || observed.function != "report") return out;
    auto c = contract::ReportCall::decode(observed.calldata);
    c.informer = spec_.name;
    out.push_back(ledger.submit(spec_.name, kContractAddress, "report", c.encode()));
    return out;
}

std::vector<ledger::Receipt> InformerActor::replay_commit(ledger::Ledger& ledger, const ledger::Receipt& observed) {
    std::vector<ledger::Receipt> out;
    if (spec_.kind != InformerKind::Replayer || observed.function != "report") return out;
    auto c = contract::ReportCall::decode(observed.calldata);
    // (x, y) of the copy are public in the consumed commitment list.
    const auto& list = argus(ledger).cm_list(observed.period - 1);
    const auto orig = commitment::commit_digest(c.rv1, as_bytes(c.informer));
    for (const auto& e : list) {
        if (e.cm != orig) continue;
        StoreCall s;
        s.kind = StoreKind::Cm;
        s.digest = commitment::commit_digest(c.rv1, as_bytes(spec_.name));
        s.x = e.x;
        s.y = e.y;
        out.push_back(ledger.submit(spec_.name, kContractAddress, "store", s.encode()));
        c.informer = spec_.name;
        replays_.emplace_back(c, ledger.time());
        break;
    }
    return out;
}

std::vector<ledger::Receipt> InformerActor::replay_reveal(ledger::Ledger& ledger) {
    std::vector<ledger::Receipt> out;
    for (const auto& [call, period] : replays_) {
        if (period + 1 != ledger.time()) continue;
        out.push_back(ledger.submit(spec_.name, kContractAddress, "report", call.encode()));
    }
    return out;
}

}  // namespace argus::actors
