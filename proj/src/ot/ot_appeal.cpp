#include "argus/ot/ot_appeal.hpp"

#include <algorithm>

#include "argus/crypto/keystream.hpp"

namespace argus::ot {

using crypto::Hasher;

Digest OtPublicParams::points_digest() const {
    Hasher h;
    h.var(as_bytes("argus/ot/points")).u32(n());
    for (const auto& p : points) h.var(p.encoding);
    h.var(a_s.encoding);
    return h.finish();
}

bool verify_params(const OtPublicParams& params, const GroupPoint& owner_pk) {
    return crypto::verify(owner_pk, params.points_digest().view(), params.points_sig);
}

bool OwnerOtSecret::register_evidence(const GroupPoint& r) {
    std::lock_guard lock(mu_);
    return seen_.insert(r.encoding).second;
}

bool OwnerOtSecret::has_evidence(const GroupPoint& r) const {
    std::lock_guard lock(mu_);
    return seen_.count(r.encoding) != 0;
}

Initialized initialize(std::shared_ptr<const Group> group, std::uint32_t n, Rng& rng, const GroupScalar& owner_sk) {
    if (n < 2) throw std::invalid_argument("OT needs at least two versions");
    const Group& g = *group;
    GroupScalar s;
    do {
        s = g.random_scalar(rng);
    } while (s.is_zero());
    OtPublicParams params;
    params.group = group;
    params.a_s = g.base_mul(s);
    std::vector<GroupPoint> p_prime;
    params.points.reserve(n);
    p_prime.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        params.points.push_back(g.base_mul(g.random_scalar(rng)));
        p_prime.push_back(g.mul(s, params.points.back()));
    }
    params.points_sig = crypto::sign(owner_sk, params.points_digest().view());
    return {std::move(params), std::make_unique<OwnerOtSecret>(s, std::move(p_prime))};
}

OtRecord choose(const OtPublicParams& params, std::uint32_t l, Rng& rng) {
    if (l < 1 || l > params.n()) throw std::invalid_argument("OT choice out of range");
    return {params.group->random_scalar(rng), l};
}

GroupPoint evidence_point(const OtPublicParams& params, const OtRecord& record) {
    const Group& g = *params.group;
    return g.sub(params.point(record.l), g.base_mul(record.r));
}

EvidenceRequest request_evidence(const OtPublicParams& params, const OtRecord& record, const GroupScalar& licensee_sk) {
    auto r_point = evidence_point(params, record);
    auto sig = crypto::sign(licensee_sk, r_point.encoding);
    return {std::move(r_point), std::move(sig)};
}

OtEvidence countersign(const OtPublicParams& params, OwnerOtSecret& secret, const EvidenceRequest& req,
                       const GroupPoint& licensee_pk, const GroupScalar& owner_sk) {
    GroupPoint r_point;
    try {
        r_point = params.group->decode_point(req.r_point.encoding);
    } catch (const DecodeError&) {
        throw ProtocolError("evidence point is not a group element");
    }
    if (!crypto::verify(licensee_pk, r_point.encoding, req.sig_licensee)) {
        throw ProtocolError("licensee signature on R does not verify");
    }
    if (!secret.register_evidence(r_point)) throw ProtocolError("R was already used in an earlier session");
    auto sig_owner = crypto::cosign(owner_sk, r_point.encoding, req.sig_licensee);
    return {std::move(r_point), req.sig_licensee, std::move(sig_owner)};
}

OtEvidence generate_evidence(const OtPublicParams& params, OwnerOtSecret& secret, const OtRecord& record,
                             const GroupScalar& licensee_sk, const GroupPoint& licensee_pk, const GroupScalar& owner_sk) {
    return countersign(params, secret, request_evidence(params, record, licensee_sk), licensee_pk, owner_sk);
}

bool verify_evidence(const OtEvidence& ev, const GroupPoint& licensee_pk, const GroupPoint& owner_pk) {
    return crypto::verify(licensee_pk, ev.r_point.encoding, ev.sig_licensee) &&
           crypto::verify_cosign(owner_pk, ev.r_point.encoding, ev.sig_licensee, ev.sig_owner);
}

Bytes frame(ByteView payload) {
    Bytes out(payload.begin(), payload.end());
    const auto d = crypto::sha256(payload);
    out.insert(out.end(), d.bytes.begin(), d.bytes.begin() + kChecksumBytes);
    return out;
}

Bytes unframe(ByteView framed) {
    if (framed.size() < kChecksumBytes) throw DecodeError("framed payload too short");
    const auto body = framed.first(framed.size() - kChecksumBytes);
    const auto d = crypto::sha256(body);
    if (!std::equal(d.bytes.begin(), d.bytes.begin() + kChecksumBytes, framed.end() - kChecksumBytes)) {
        throw DecodeError("payload checksum mismatch");
    }
    return Bytes(body.begin(), body.end());
}

std::vector<Bytes> transfer(const OtPublicParams& params, const OwnerOtSecret& secret, const OtEvidence& ev,
                            const GroupPoint& licensee_pk, const GroupPoint& owner_pk,
                            const std::vector<Bytes>& payloads) {
    if (payloads.size() != params.n()) throw std::invalid_argument("transfer: need exactly N payloads");
    if (!verify_evidence(ev, licensee_pk, owner_pk)) throw ProtocolError("transfer refused: evidence not dual-signed");
    if (!secret.has_evidence(ev.r_point)) throw ProtocolError("transfer refused: evidence not issued in this session");
    const Group& g = *params.group;
    const auto r_prime = g.mul(secret.s(), ev.r_point);
    std::size_t width = 0;
    for (const auto& p : payloads) width = std::max(width, p.size());
    std::vector<Bytes> e;
    e.reserve(payloads.size());
    for (std::uint32_t i = 1; i <= params.n(); ++i) {
        Bytes padded = payloads[i - 1];
        padded.resize(width, 0);
        Bytes framed = frame(padded);
        const auto q = g.sub(secret.p_prime(i), r_prime);
        xor_into(framed, crypto::keystream(q, params.a_s, i, framed.size()));
        e.push_back(std::move(framed));
    }
    return e;
}

std::optional<Bytes> try_open(const OtPublicParams& params, const Bytes& e_j, std::uint32_t j, const GroupPoint& q) {
    Bytes framed = e_j;
    xor_into(framed, crypto::keystream(q, params.a_s, j, framed.size()));
    try {
        return unframe(framed);
    } catch (const DecodeError&) {
        return std::nullopt;
    }
}

Bytes receive(const OtPublicParams& params, const std::vector<Bytes>& e, const OtRecord& record) {
    if (e.size() != params.n()) throw DecodeError("transfer vector has the wrong length");
    if (record.l < 1 || record.l > params.n()) throw DecodeError("record index out of range");
    const auto q = params.group->mul(record.r, params.a_s);
    auto out = try_open(params, e[record.l - 1], record.l, q);
    if (!out) throw DecodeError("payload checksum mismatch");
    return *out;
}

Bytes AppealSubmission::encode(const Group& g) const {
    ByteWriter w;
    w.var(r_point.encoding).var(sig_licensee.encode()).var(sig_owner.encode()).var(g.encode_scalar(r)).u32(l);
    return std::move(w).bytes();
}

AppealSubmission AppealSubmission::decode(const Group& g, ByteView bytes) {
    ByteReader rd(bytes);
    AppealSubmission s;
    s.r_point = g.decode_point(rd.var());
    s.sig_licensee = Signature::decode(rd.var());
    s.sig_owner = Signature::decode(rd.var());
    s.r = g.decode_scalar(rd.var());
    s.l = rd.u32();
    rd.expect_done();
    return s;
}

AppealSubmission make_appeal(const OtEvidence& ev, const OtRecord& record) {
    return {ev.r_point, ev.sig_licensee, ev.sig_owner, record.r, record.l};
}

Verdict appeal_verdict(const OtPublicParams& params, const AppealSubmission& sub, const GroupPoint& licensee_pk,
                       const GroupPoint& owner_pk, std::uint32_t accused_index) {
    try {
        if (sub.l < 1 || sub.l > params.n()) return Verdict::AppealFails;
        const OtEvidence ev{sub.r_point, sub.sig_licensee, sub.sig_owner};
        if (!verify_evidence(ev, licensee_pk, owner_pk)) return Verdict::AppealFails;
        const Group& g = *params.group;
        if (g.sub(params.point(sub.l), g.base_mul(sub.r)) != sub.r_point) return Verdict::AppealFails;
        return sub.l != accused_index ? Verdict::FalselyAccused : Verdict::AppealFails;
    } catch (const std::exception&) {
        return Verdict::AppealFails;
    }
}

Digest transcript_digest(const std::vector<Bytes>& e) {
    Hasher h;
    h.var(as_bytes("argus/ot/transcript")).u32(static_cast<std::uint32_t>(e.size()));
    for (const auto& x : e) h.var(x);
    return h.finish();
}

Bytes BaselineAppeal::encode(const Group& g) const {
    ByteWriter w;
    w.var(core.encode(g)).var(transcript_sig.encode()).u32(static_cast<std::uint32_t>(transcript.size()));
    for (const auto& x : transcript) w.var(x);
    return std::move(w).bytes();
}

BaselineAppeal BaselineAppeal::decode(const Group& g, ByteView bytes) {
    ByteReader rd(bytes);
    BaselineAppeal b;
    b.core = AppealSubmission::decode(g, rd.var());
    b.transcript_sig = Signature::decode(rd.var());
    const auto n = rd.u32();
    if (n > rd.remaining() / 4) throw DecodeError("transcript count exceeds message");
    b.transcript.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) b.transcript.push_back(rd.var());
    rd.expect_done();
    return b;
}

}  // namespace argus::ot
