#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "argus/bytes.hpp"

namespace argus::crypto {

/// 32-byte SHA-256 output.
struct Digest {
    static constexpr std::size_t kSize = 32;
    std::array<std::uint8_t, kSize> bytes{};

    auto operator<=>(const Digest&) const = default;

    ByteView view() const { return bytes; }
    std::string hex() const { return to_hex(bytes); }
    static Digest from_view(ByteView v);
};

/// Incremental SHA-256. Variable-length inputs go through var(), which
/// prefixes a u32 length so adjacent fields cannot be re-split.
class Hasher {
public:
    Hasher();
    ~Hasher();
    Hasher(Hasher&&) noexcept;
    Hasher& operator=(Hasher&&) noexcept;
    Hasher(const Hasher&) = delete;
    Hasher& operator=(const Hasher&) = delete;

    Hasher& raw(ByteView data);
    Hasher& var(ByteView data);
    Hasher& u32(std::uint32_t v);
    Hasher& u64(std::uint64_t v);
    Hasher& digest(const Digest& d) { return raw(d.bytes); }

    Digest finish();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Digest sha256(ByteView data);

/// Merkle interior node: H(left || right) over the raw 64 bytes.
Digest hash_pair(const Digest& left, const Digest& right);

}  // namespace argus::crypto

template <>
struct std::hash<argus::crypto::Digest> {
    std::size_t operator()(const argus::crypto::Digest& d) const noexcept {
        std::size_t h = 0;
        for (int i = 0; i < 8; ++i) h = (h << 8) | d.bytes[i];
        return h;
    }
};
