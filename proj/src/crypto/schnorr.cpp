#include "argus/crypto/schnorr.hpp"

namespace argus::crypto {

namespace {

GroupScalar challenge(const GroupPoint& r, const GroupPoint& pk, const Digest& msg_digest) {
    Hasher h;
    h.var(as_bytes("argus/schnorr/challenge")).var(r.encoding).var(pk.encoding).digest(msg_digest);
    return secure_group().scalar_from_digest(h.finish());
}

}  // namespace

KeyPair KeyPair::generate(Rng& rng) {
    const auto& g = secure_group();
    GroupScalar sk;
    do {
        sk = g.random_scalar(rng);
    } while (sk.is_zero());
    return KeyPair{sk, g.base_mul(sk)};
}

Bytes Signature::encode() const {
    ByteWriter w;
    w.raw(r.encoding).raw(s.be);
    return std::move(w).bytes();
}

Signature Signature::decode(ByteView bytes) {
    if (bytes.size() != kEncodedSize) throw DecodeError("signature must be 65 bytes");
    const auto& g = secure_group();
    Signature sig;
    sig.r = g.decode_point(bytes.first(33));
    sig.s = g.decode_scalar(bytes.subspan(33));
    return sig;
}

Signature sign(const GroupScalar& sk, ByteView msg) {
    if (msg.empty()) throw std::invalid_argument("sign: empty message");
    const auto& g = secure_group();
    const Digest md = sha256(msg);
    Hasher h;
    h.var(as_bytes("argus/schnorr/nonce")).raw(sk.be).digest(md);
    GroupScalar k = g.scalar_from_digest(h.finish());
    for (std::uint32_t ctr = 0; k.is_zero(); ++ctr) {
        h.var(as_bytes("argus/schnorr/nonce")).raw(sk.be).digest(md).u32(ctr);
        k = g.scalar_from_digest(h.finish());
    }
    Signature sig;
    sig.r = g.base_mul(k);
    const auto pk = g.base_mul(sk);
    sig.s = g.scalar_add(k, g.scalar_mul(challenge(sig.r, pk, md), sk));
    return sig;
}

bool verify(const GroupPoint& pk, ByteView msg, const Signature& sig) {
    if (msg.empty()) return false;
    try {
        const auto& g = secure_group();
        if (g.is_identity(pk) || g.is_identity(sig.r)) return false;
        const auto e = challenge(sig.r, pk, sha256(msg));
        return g.base_mul(sig.s) == g.add(sig.r, g.mul(e, pk));
    } catch (const DecodeError&) {
        return false;
    }
}

Bytes cosign_message(ByteView msg, const Signature& inner) {
    ByteWriter w;
    w.raw(msg).raw(inner.encode());
    return std::move(w).bytes();
}

Signature cosign(const GroupScalar& sk, ByteView msg, const Signature& inner) {
    return sign(sk, cosign_message(msg, inner));
}

bool verify_cosign(const GroupPoint& pk, ByteView msg, const Signature& inner, const Signature& outer) {
    return verify(pk, cosign_message(msg, inner), outer);
}

}  // namespace argus::crypto
