#include "argus/crypto/keystream.hpp"

#include <algorithm>

namespace argus::crypto {

namespace {

template <typename Prefix>
Bytes expand(Prefix prefix, std::size_t len) {
    Bytes out(len);
    Hasher h;
    for (std::uint32_t ctr = 0; static_cast<std::size_t>(ctr) * 32 < len; ++ctr) {
        prefix(h);
        const Digest block = h.u32(ctr).finish();
        const std::size_t off = static_cast<std::size_t>(ctr) * 32;
        std::copy_n(block.bytes.begin(), std::min<std::size_t>(32, len - off), out.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return out;
}

}  // namespace

Bytes keystream(const GroupPoint& q_point, const GroupPoint& a_s, std::uint32_t index, std::size_t len) {
    return expand([&](Hasher& h) { h.var(q_point.encoding).var(a_s.encoding).u32(index); }, len);
}

Bytes keystream(ByteView key, std::size_t len) {
    return expand([&](Hasher& h) { h.var(as_bytes("argus/symenc")).var(key); }, len);
}

}  // namespace argus::crypto
