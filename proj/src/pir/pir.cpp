#include "argus/pir/pir.hpp"

#include <algorithm>

#include "argus/crypto/keystream.hpp"

namespace argus::pir {

Bytes sym_encrypt(ByteView key, ByteView payload, std::size_t width) {
    if (payload.size() > width) throw std::invalid_argument("sym_encrypt: payload wider than the padded width");
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(payload.size())).raw(payload);
    Bytes body = std::move(w).bytes();
    body.resize(4 + width, 0);
    Bytes framed = ot::frame(body);
    xor_into(framed, crypto::keystream(key, framed.size()));
    return framed;
}

Bytes sym_decrypt(ByteView key, ByteView ciphertext) {
    Bytes framed(ciphertext.begin(), ciphertext.end());
    xor_into(framed, crypto::keystream(key, framed.size()));
    const Bytes body = ot::unframe(framed);
    ByteReader rd(body);
    const auto len = rd.u32();
    if (len > rd.remaining()) throw DecodeError("ciphertext length field exceeds body");
    auto p = rd.raw(len);
    return Bytes(p.begin(), p.end());
}

CipherStore encrypt_all(const std::vector<Bytes>& payloads, const std::vector<Bytes>& keys) {
    if (payloads.size() != keys.size()) throw std::invalid_argument("encrypt_all: key and payload counts differ");
    std::size_t width = 0;
    for (const auto& p : payloads) width = std::max(width, p.size());
    CipherStore store;
    store.ciphertexts.reserve(payloads.size());
    for (std::size_t i = 0; i < payloads.size(); ++i) store.ciphertexts.push_back(sym_encrypt(keys[i], payloads[i], width));
    return store;
}

void BandwidthLedger::transfer(const std::string& phase, const std::string& from, const std::string& to,
                               std::uint64_t bytes) {
    rows_[{phase, from}].sent += bytes;
    rows_[{phase, to}].received += bytes;
}

std::uint64_t BandwidthLedger::received(const std::string& party) const {
    std::uint64_t total = 0;
    for (const auto& [key, c] : rows_) {
        if (key.second == party) total += c.received;
    }
    return total;
}

std::uint64_t BandwidthLedger::sent(const std::string& party) const {
    std::uint64_t total = 0;
    for (const auto& [key, c] : rows_) {
        if (key.second == party) total += c.sent;
    }
    return total;
}

void BandwidthLedger::merge(const BandwidthLedger& other) {
    for (const auto& [key, c] : other.rows_) {
        rows_[key].sent += c.sent;
        rows_[key].received += c.received;
    }
}

std::size_t mask_bytes(std::uint32_t n) { return (static_cast<std::size_t>(n) + 7) / 8; }

bool mask_bit(ByteView mask, std::uint32_t i) { return (mask[(i - 1) / 8] >> ((i - 1) % 8) & 1) != 0; }

Bytes PirServer::answer(ByteView mask) const {
    if (mask.size() != mask_bytes(store_->n())) throw DecodeError("PIR mask has the wrong length");
    Bytes acc(store_->width(), 0);
    for (std::uint32_t i = 1; i <= store_->n(); ++i) {
        if (mask_bit(mask, i)) xor_into(acc, store_->ciphertexts[i - 1]);
    }
    return acc;
}

PirQuery make_query(std::uint32_t n, std::uint32_t l, Rng& rng) {
    if (l < 1 || l > n) throw std::invalid_argument("PIR index out of range");
    PirQuery q;
    q.q1 = rng.bytes(mask_bytes(n));
    if (n % 8 != 0) q.q1.back() &= static_cast<std::uint8_t>((1u << (n % 8)) - 1);
    q.q2 = q.q1;
    q.q2[(l - 1) / 8] ^= static_cast<std::uint8_t>(1u << ((l - 1) % 8));
    return q;
}

Bytes pir_fetch(const std::vector<const PirServer*>& servers, std::uint32_t l, Rng& rng, BandwidthLedger& ledger,
                const std::string& client) {
    if (servers.size() != 2) throw ConfigError("two-server PIR needs exactly two servers");
    const auto q = make_query(servers[0]->n(), l, rng);
    ledger.transfer("pir_query", client, "server1", q.q1.size());
    ledger.transfer("pir_query", client, "server2", q.q2.size());
    Bytes a1 = servers[0]->answer(q.q1);
    const Bytes a2 = servers[1]->answer(q.q2);
    ledger.transfer("pir_response", "server1", client, a1.size());
    ledger.transfer("pir_response", "server2", client, a2.size());
    xor_into(a1, a2);
    return a1;
}

HybridOwner prepare_hybrid(const std::vector<Bytes>& payloads, Rng& rng) {
    std::vector<Bytes> keys;
    keys.reserve(payloads.size());
    for (std::size_t i = 0; i < payloads.size(); ++i) keys.push_back(rng.bytes(kKeyBytes));
    auto store = std::make_shared<const CipherStore>(encrypt_all(payloads, keys));
    return HybridOwner{std::move(keys), store, PirServer(store), PirServer(store)};
}

void record_evidence_exchange(const ot::OtEvidence& ev, BandwidthLedger& ledger) {
    ByteWriter req;
    req.var(ev.r_point.encoding).var(ev.sig_licensee.encode());
    ledger.transfer("ot_evidence", "licensee", "owner", req.size());
    ByteWriter resp;
    resp.var(ev.sig_owner.encode());
    ledger.transfer("ot_evidence", "owner", "licensee", resp.size());
}

namespace {

std::uint64_t vector_bytes(const std::vector<Bytes>& e) {
    std::uint64_t total = 0;
    for (const auto& x : e) total += x.size();
    return total;
}

}  // namespace

ShareResult hybrid_share(const ot::OtPublicParams& params, const ot::OwnerOtSecret& secret, const ot::OtEvidence& ev,
                         const crypto::GroupPoint& licensee_pk, const crypto::GroupPoint& owner_pk,
                         const HybridOwner& owner, const ot::OtRecord& record, Rng& rng) {
    ShareResult res;
    record_evidence_exchange(ev, res.ledger);
    const auto e = ot::transfer(params, secret, ev, licensee_pk, owner_pk, owner.keys);
    res.ledger.transfer("ot_keys", "owner", "licensee", vector_bytes(e));
    const Bytes key = ot::receive(params, e, record);
    const Bytes c = pir_fetch({&owner.server1, &owner.server2}, record.l, rng, res.ledger);
    res.payload = sym_decrypt(key, c);
    return res;
}

ShareResult direct_share(const ot::OtPublicParams& params, const ot::OwnerOtSecret& secret, const ot::OtEvidence& ev,
                         const crypto::GroupPoint& licensee_pk, const crypto::GroupPoint& owner_pk,
                         const std::vector<Bytes>& payloads, const ot::OtRecord& record) {
    ShareResult res;
    record_evidence_exchange(ev, res.ledger);
    const auto e = ot::transfer(params, secret, ev, licensee_pk, owner_pk, payloads);
    res.ledger.transfer("ot_payloads", "owner", "licensee", vector_bytes(e));
    res.payload = ot::receive(params, e, record);
    return res;
}

}  // namespace argus::pir
