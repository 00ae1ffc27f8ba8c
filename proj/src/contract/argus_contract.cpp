#include "argus/contract/argus_contract.hpp"

#include <fmt/format.h>

#include "argus/commitment/commitment.hpp"
#include "argus/crypto/keystream.hpp"

namespace argus::contract {

using ledger::Revert;

const char* to_string(Status s) {
    switch (s) {
        case Status::Normal: return "NORMAL";
        case Status::Accused: return "ACCUSED";
        case Status::Guilty: return "GUILTY";
        case Status::Exonerated: return "EXONERATED";
    }
    return "?";
}

CachePolicy parse_cache_policy(const std::string& s) {
    if (s == "none") return CachePolicy::None;
    if (s == "checkpoints") return CachePolicy::Checkpoints;
    if (s == "all") return CachePolicy::All;
    throw ConfigError("unknown cache policy: " + s);
}

namespace {

merkle::PathCache make_cache(const ArgusConfig& cfg) {
    const unsigned d = cfg.shape.depth();
    switch (cfg.cache) {
        case CachePolicy::None: return merkle::PathCache(d, {});
        case CachePolicy::All: return merkle::PathCache(d);
        case CachePolicy::Checkpoints: break;
    }
    return merkle::PathCache(d, {cfg.shape.layer2_height(), cfg.shape.layer1_height()});
}

std::string money_str(const Money& m) { return incentive::to_decimal(m, 6); }

}  // namespace

ArgusContract::ArgusContract(ArgusConfig cfg)
    : cfg_(std::move(cfg)),
      schedule_(cfg_.guarantee_len > 0 ? incentive::RewardSchedule::geometric(cfg_.v, cfg_.guarantee_len)
                                       : incentive::RewardSchedule::legacy(cfg_.v)),
      licensees_(cfg_.licensees.size()),
      cache_(make_cache(cfg_)) {
    if (!cfg_.group) throw ConfigError("contract needs a group");
    if (cfg_.licensees.empty() || cfg_.licensees.size() != cfg_.licensee_pks.size()) {
        throw ConfigError("contract needs one public key per licensee");
    }
    if (cfg_.shape.m != cfg_.licensees.size()) throw ConfigError("tree shape does not match licensee count");
    if (cfg_.shape.k < 2) throw ConfigError("campaign needs at least two periods");
}

const std::vector<CmEntry>& ArgusContract::cm_list(std::uint32_t period) const {
    static const std::vector<CmEntry> empty;
    auto it = cm_lists_.find(period);
    return it == cm_lists_.end() ? empty : it->second;
}

LicenseeState& ArgusContract::licensee_mut(std::uint32_t x) {
    if (x < 1 || x > licensees_.size()) throw Revert("unknown licensee");
    return licensees_[x - 1];
}

void ArgusContract::call(ledger::CallContext& ctx, const std::string& function, ByteView calldata) {
    if (function == "deposit") return deposit(ctx);
    if (function == "store") return store(ctx, calldata);
    if (function == "report") return report(ctx, calldata);
    if (function == "appeal") return appeal(ctx, calldata);
    if (function == "appeal_baseline") return appeal_baseline(ctx, calldata);
    if (function == "allocate_bounty") return allocate_bounty(ctx, calldata);
    if (function == "set_guilty") return set_guilty(ctx, calldata);
    if (function == "noop") return;
    throw Revert("unknown function " + function);
}

void ArgusContract::deposit(ledger::CallContext& ctx) {
    if (ctx.caller() != cfg_.owner) throw Revert("only the owner deposits");
    if (started_) throw Revert("campaign already started");
    if (!rt_) throw Revert("root must be stored before the deposit");
    const Money need = cfg_.v * static_cast<long>(licensees_.size());
    if (ctx.value() != need) throw Revert("deposit must be v per licensee");
    started_ = true;
    ctx.meter().writes_new += 1;
    ctx.emit({"Deposited", {{"amount", money_str(need)}}});
}

void ArgusContract::store(ledger::CallContext& ctx, ByteView data) {
    auto c = StoreCall::decode(*cfg_.group, data);
    auto& m = ctx.meter();
    switch (c.kind) {
        case StoreKind::PBatch: {
            if (ctx.caller() != cfg_.owner) throw Revert("only the owner stores P");
            if (started_) throw Revert("P list is frozen once the campaign starts");
            if (p_list_.size() + c.points.size() > cfg_.shape.n) throw Revert("P list longer than N");
            for (auto& p : c.points) {
                m.writes_new += (p.encoding.size() + 31) / 32;
                p_list_.push_back(std::move(p));
            }
            return;
        }
        case StoreKind::PRoot:
            if (ctx.caller() != cfg_.owner) throw Revert("only the owner stores the P root");
            if (started_) throw Revert("P root is frozen once the campaign starts");
            m.writes_new += 1;
            p_root_ = c.digest;
            return;
        case StoreKind::Rt:
            if (ctx.caller() != cfg_.owner) throw Revert("only the owner stores rt");
            if (started_) throw Revert("rt cannot change after the campaign starts");
            if (rt_) {
                m.writes_update += 1;
            } else {
                m.writes_new += 1;
            }
            rt_ = c.digest;
            return;
        case StoreKind::Cm:
            // cm word plus a packed (x, y) word
            m.writes_new += 2;
            cm_lists_[ctx.time()].push_back(CmEntry{c.digest, c.x, c.y, false});
            return;
    }
}

void ArgusContract::report(ledger::CallContext& ctx, ByteView data) {
    auto c = ReportCall::decode(data);
    auto& m = ctx.meter();
    if (!started_ || !rt_) throw Revert("campaign not started");
    const std::uint32_t t = ctx.time();
    if (t < 2) throw Revert("no earlier period to reveal from");
    const std::uint32_t ts = t - 1;
    if (ts > cfg_.shape.k) throw Revert("campaign periods exhausted");

    // H(rv1 || rv3) must match an unconsumed commitment from period T-1.
    const Digest expect = commitment::commit_digest(c.rv1, as_bytes(c.informer));
    m.hash(32 + 4 + c.informer.size());
    auto it = cm_lists_.find(ts);
    if (it == cm_lists_.end()) throw Revert("no commitments in the previous period");
    CmEntry* match = nullptr;
    for (auto& e : it->second) {
        m.reads += 1;
        if (!e.consumed && e.cm == expect) {
            match = &e;
            break;
        }
    }
    if (match == nullptr) throw Revert("no matching commitment");
    const std::uint32_t x = match->x, y = match->y;
    if (x < 1 || x > cfg_.shape.m || y < 1 || y > cfg_.shape.n) throw Revert("commitment names an unknown copy");

    const Digest leaf = merkle::id_leaf_from_reveal(c.rv1, x, y);
    m.hash(32 + 8);
    if (c.path.leaf != leaf) throw Revert("path leaf does not match the revealed copy");
    if (c.path.index != cfg_.shape.global_index(x, y, ts)) throw Revert("path does not sit at the reveal timestamp");

    m.reads += 1;  // rt
    const auto truncated_at = static_cast<unsigned>(c.path.siblings.size());
    if (truncated_at < cache_.depth()) m.reads += 1;
    const auto res = merkle::cached_verify(cache_, *rt_, c.path);
    m.hash_pairs(res.hash_ops);
    if (!res.ok) throw Revert(res.needs_full_path ? "truncated path does not end at a cached node" : "invalid Merkle path");
    m.writes_new += res.nodes_inserted;

    auto& lic = licensee_mut(x);
    if (lic.allocation_started) throw Revert("bounty allocation already started for this licensee");
    m.reads += 1;
    if (lic.is_informer.count(c.informer) != 0) throw Revert("informer already reported this licensee");

    match->consumed = true;
    m.writes_update += 1;
    if (lic.status == Status::Normal) {
        lic.status = Status::Accused;
        lic.version = y;
        lic.report_time = ts;
        m.writes_new += 3;
        ctx.emit({"Accused", {{"x", std::to_string(x)}, {"version", std::to_string(y)}, {"period", std::to_string(ts)}}});
    }
    lic.report_number += 1;
    lic.is_informer[c.informer] = true;
    m.writes_update += 1;
    m.writes_new += 1;

    const Money bounty = schedule_.immediate(lic.report_number);
    if (lic.paid + bounty > cfg_.v) throw Revert("bounty pool exhausted");
    lic.paid += bounty;
    ctx.pay(c.informer, bounty);
    ctx.emit({"Reported",
              {{"x", std::to_string(x)}, {"y", std::to_string(y)}, {"informer", c.informer},
               {"number", std::to_string(lic.report_number)}}});
    ctx.emit({"BountyPaid", {{"pk", c.informer}, {"x", std::to_string(x)}, {"amount", money_str(bounty)}, {"exact", bounty.str()}, {"kind", "immediate"}}});
}

GroupPoint ArgusContract::resolve_point(ledger::CallContext& ctx, std::uint32_t l,
                                        const std::optional<PointProof>& proof) {
    auto& m = ctx.meter();
    if (!cfg_.p_root_mode) {
        if (l < 1 || l > p_list_.size()) throw Revert("version index outside the P list");
        m.reads += 2;  // 33-byte point spans two words
        return p_list_[l - 1];
    }
    if (!p_root_ || !proof) throw Revert("P root mode needs an inclusion proof");
    m.reads += 1;
    if (l < 1 || l > cfg_.shape.n || proof->path.index != l - 1) throw Revert("proof is for another index");
    m.hash(4 + 4 + proof->point.encoding.size() + 16);
    if (proof->path.leaf != p_leaf(proof->point)) throw Revert("proof leaf does not commit the point");
    m.hash_pairs(proof->path.siblings.size());
    if (!merkle::verify(*p_root_, proof->path)) throw Revert("P inclusion proof invalid");
    return proof->point;
}

void ArgusContract::check_appeal_gates(ledger::CallContext& ctx, std::uint32_t x, std::uint32_t l) const {
    if (x < 1 || x > licensees_.size()) throw Revert("unknown licensee");
    if (ctx.caller() != cfg_.licensees[x - 1]) throw Revert("only the accused licensee may appeal");
    const auto& lic = licensees_[x - 1];
    ctx.meter().reads += 3;
    if (lic.status != Status::Accused) throw Revert("licensee is not accused");
    if (ctx.time() - lic.report_time > cfg_.timeout) throw Revert("appeal window closed");
    if (l == lic.version) throw Revert("chosen index equals the leaked version");
}

void ArgusContract::appeal(ledger::CallContext& ctx, ByteView data) {
    auto c = AppealCall::decode(*cfg_.group, data);
    auto& m = ctx.meter();
    check_appeal_gates(ctx, c.x, c.sub.l);
    const auto& g = *cfg_.group;

    const ot::OtEvidence ev{c.sub.r_point, c.sub.sig_licensee, c.sub.sig_owner};
    m.sig_verifies += 2;
    if (!ot::verify_evidence(ev, cfg_.licensee_pks[c.x - 1], cfg_.owner_pk)) throw Revert("evidence signatures invalid");

    const GroupPoint p_l = resolve_point(ctx, c.sub.l, c.p_proof);
    m.group_ops += 2;
    if (g.sub(p_l, g.base_mul(c.sub.r)) != c.sub.r_point) throw Revert("P_l - r*G does not equal R");

    licensee_mut(c.x).status = Status::Exonerated;
    m.writes_update += 1;
    ctx.emit({"Exonerated", {{"x", std::to_string(c.x)}}});
}

void ArgusContract::appeal_baseline(ledger::CallContext& ctx, ByteView data) {
    if (!cfg_.baseline_appeal) throw Revert("baseline appeal disabled");
    auto c = BaselineAppealCall::decode(*cfg_.group, data);
    auto& m = ctx.meter();
    const auto& sub = c.appeal.core;
    check_appeal_gates(ctx, c.x, sub.l);
    const auto& g = *cfg_.group;

    const ot::OtEvidence ev{sub.r_point, sub.sig_licensee, sub.sig_owner};
    m.sig_verifies += 2;
    if (!ot::verify_evidence(ev, cfg_.licensee_pks[c.x - 1], cfg_.owner_pk)) throw Revert("evidence signatures invalid");

    // Hash and authenticate the whole transcript.
    std::size_t transcript_bytes = 0;
    for (const auto& e : c.appeal.transcript) transcript_bytes += 4 + e.size();
    m.hash(transcript_bytes);
    m.sig_verifies += 1;
    const auto digest = ot::transcript_digest(c.appeal.transcript);
    if (!crypto::verify(cfg_.owner_pk, digest.view(), c.appeal.transcript_sig)) throw Revert("transcript signature invalid");
    if (c.appeal.transcript.size() != cfg_.shape.n || sub.l < 1 || sub.l > cfg_.shape.n) throw Revert("transcript size mismatch");

    // Decrypt the licensee's slot and check it opens.
    if (cfg_.p_root_mode) throw Revert("baseline appeal needs the on-chain P list");
    const GroupPoint p_l = resolve_point(ctx, sub.l, std::nullopt);
    m.group_ops += 3;
    if (g.sub(p_l, g.base_mul(sub.r)) != sub.r_point) throw Revert("P_l - r*G does not equal R");
    const auto q = g.mul(sub.r, cfg_.a_s);
    const auto& e_l = c.appeal.transcript[sub.l - 1];
    m.hash(e_l.size());
    ot::OtPublicParams view;
    view.group = cfg_.group;
    view.a_s = cfg_.a_s;
    if (!ot::try_open(view, e_l, sub.l, q)) throw Revert("transcript slot does not open");

    licensee_mut(c.x).status = Status::Exonerated;
    m.writes_update += 1;
    ctx.emit({"Exonerated", {{"x", std::to_string(c.x)}}});
}

void ArgusContract::allocate_bounty(ledger::CallContext& ctx, ByteView data) {
    auto c = AllocateCall::decode(data);
    auto& m = ctx.meter();
    if (ctx.time() < cfg_.shape.k) throw Revert("campaign has not ended");
    auto& lic = licensee_mut(c.x);
    m.reads += 2;
    auto it = lic.is_informer.find(c.informer);
    if (it == lic.is_informer.end() || !it->second) throw Revert("not an unpaid informer of this licensee");
    const Money amount = schedule_.deferred(lic.report_number);
    if (lic.paid + amount > cfg_.v) throw Revert("bounty pool exhausted");
    it->second = false;
    lic.allocation_started = true;
    lic.paid += amount;
    m.writes_update += 2;
    ctx.pay(c.informer, amount);
    ctx.emit({"BountyPaid", {{"pk", c.informer}, {"x", std::to_string(c.x)}, {"amount", money_str(amount)}, {"exact", amount.str()}, {"kind", "deferred"}}});
}

void ArgusContract::set_guilty(ledger::CallContext& ctx, ByteView data) {
    auto c = LicenseeCall::decode(data);
    auto& lic = licensee_mut(c.x);
    ctx.meter().reads += 2;
    if (lic.status != Status::Accused) throw Revert("licensee is not accused");
    if (ctx.time() - lic.report_time <= cfg_.timeout) throw Revert("appeal window still open");
    lic.status = Status::Guilty;
    ctx.meter().writes_update += 1;
    ctx.emit({"Guilty", {{"x", std::to_string(c.x)}}});
}

}  // namespace argus::contract
