#pragma once

#include "argus/crypto/group.hpp"

namespace argus::crypto {

/// Counter-mode SHA-256 expansion of (enc(Q), enc(a_s), index).
/// Block j is H(var(Q) || var(a_s) || be32(index) || be32(j)).
Bytes keystream(const GroupPoint& q_point, const GroupPoint& a_s, std::uint32_t index, std::size_t len);

/// Same expansion keyed by an opaque symmetric key.
Bytes keystream(ByteView key, std::size_t len);

}  // namespace argus::crypto
