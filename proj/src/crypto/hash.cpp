#include "argus/crypto/hash.hpp"

#include <openssl/evp.h>

#include <cstring>

namespace argus::crypto {

Digest Digest::from_view(ByteView v) {
    if (v.size() != kSize) throw DecodeError("digest must be 32 bytes");
    Digest d;
    std::memcpy(d.bytes.data(), v.data(), kSize);
    return d;
}

struct Hasher::Impl {
    EVP_MD_CTX* ctx = nullptr;
    ~Impl() { EVP_MD_CTX_free(ctx); }
};

Hasher::Hasher() : impl_(std::make_unique<Impl>()) {
    impl_->ctx = EVP_MD_CTX_new();
    if (impl_->ctx == nullptr || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 context initialisation failed");
    }
}

Hasher::~Hasher() = default;
Hasher::Hasher(Hasher&&) noexcept = default;
Hasher& Hasher::operator=(Hasher&&) noexcept = default;

Hasher& Hasher::raw(ByteView data) {
    if (!data.empty()) EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
    return *this;
}

Hasher& Hasher::var(ByteView data) {
    u32(static_cast<std::uint32_t>(data.size()));
    return raw(data);
}

Hasher& Hasher::u32(std::uint32_t v) {
    std::uint8_t b[4] = {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                         static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    return raw(b);
}

Hasher& Hasher::u64(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
    return raw(b);
}

Digest Hasher::finish() {
    Digest d;
    unsigned int len = 0;
    EVP_DigestFinal_ex(impl_->ctx, d.bytes.data(), &len);
    EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr);
    return d;
}

Digest sha256(ByteView data) {
    Digest d;
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr);
    return d;
}

Digest hash_pair(const Digest& left, const Digest& right) {
    std::uint8_t buf[64];
    std::memcpy(buf, left.bytes.data(), 32);
    std::memcpy(buf + 32, right.bytes.data(), 32);
    return sha256(buf);
}

}  // namespace argus::crypto
