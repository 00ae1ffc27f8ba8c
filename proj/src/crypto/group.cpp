#include "argus/crypto/group.hpp"

#include <algorithm>
#include <mutex>

namespace argus::crypto {

bool GroupScalar::is_zero() const {
    return std::all_of(be.begin(), be.end(), [](std::uint8_t b) { return b == 0; });
}

Bytes Group::encode_scalar(const GroupScalar& s) const {
    const auto w = scalar_bytes();
    return Bytes(s.be.end() - static_cast<std::ptrdiff_t>(w), s.be.end());
}

GroupScalar Group::decode_scalar(ByteView bytes) const {
    const auto w = scalar_bytes();
    if (bytes.size() != w) throw DecodeError("scalar has wrong width");
    GroupScalar s;
    std::copy(bytes.begin(), bytes.end(), s.be.end() - static_cast<std::ptrdiff_t>(w));
    if (!scalar_in_range(s)) throw DecodeError("scalar out of range");
    return s;
}

std::shared_ptr<const Group> make_group(std::string_view backend) {
    if (backend == "tiny") return std::make_shared<TinyGroup>(101);
    if (backend == "secure") {
        static std::shared_ptr<const Group> secure = std::make_shared<Secp256k1Group>();
        return secure;
    }
    throw ConfigError("unknown group backend: " + std::string(backend));
}

const Group& secure_group() { return *make_group("secure"); }

}  // namespace argus::crypto
