#pragma once

#include "argus/crypto/group.hpp"

namespace argus::crypto {

/// Schnorr signatures over secp256k1. Signing keys never live on the tiny
/// group: a 1/101 forgery chance would make signature checks meaningless.
struct KeyPair {
    GroupScalar secret;
    GroupPoint pub;

    static KeyPair generate(Rng& rng);
};

struct Signature {
    GroupPoint r;
    GroupScalar s;

    static constexpr std::size_t kEncodedSize = 65;

    Bytes encode() const;
    /// Throws DecodeError.
    static Signature decode(ByteView bytes);
    bool operator==(const Signature&) const = default;
};

/// Deterministic nonce derived from (sk, H(msg)). msg must be nonempty.
Signature sign(const GroupScalar& sk, ByteView msg);
/// Never throws; malformed keys or signatures verify as false.
bool verify(const GroupPoint& pk, ByteView msg, const Signature& sig);

/// Message covered by a co-signature: msg || inner.encode().
Bytes cosign_message(ByteView msg, const Signature& inner);
Signature cosign(const GroupScalar& sk, ByteView msg, const Signature& inner);
bool verify_cosign(const GroupPoint& pk, ByteView msg, const Signature& inner, const Signature& outer);

}  // namespace argus::crypto
