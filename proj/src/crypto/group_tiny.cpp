#include "argus/crypto/group.hpp"

namespace argus::crypto {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t be_mod(ByteView be, std::uint64_t q) {
    unsigned __int128 acc = 0;
    for (auto b : be) acc = ((acc << 8) | b) % q;
    return static_cast<std::uint64_t>(acc);
}

}  // namespace

TinyGroup::TinyGroup(std::uint64_t q) : q_(q), width_(0) {
    if (!is_prime(q) || q > (1ULL << 32)) throw ConfigError("tiny group order must be a prime below 2^32");
    for (std::uint64_t v = q - 1; v != 0; v >>= 8) ++width_;
}

GroupScalar TinyGroup::make_scalar(std::uint64_t v) const {
    GroupScalar s;
    v %= q_;
    for (int i = 0; i < 8; ++i) s.be[31 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    return s;
}

std::uint64_t TinyGroup::value(const GroupScalar& s) const { return be_mod(s.be, q_); }

GroupPoint TinyGroup::point(std::uint64_t v) const {
    v %= q_;
    GroupPoint p;
    p.encoding.resize(width_);
    for (std::size_t i = 0; i < width_; ++i) p.encoding[width_ - 1 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    return p;
}

std::uint64_t TinyGroup::value(const GroupPoint& p) const {
    if (p.encoding.size() != width_) throw DecodeError("tiny point has wrong width");
    std::uint64_t v = 0;
    for (auto b : p.encoding) v = (v << 8) | b;
    if (v >= q_) throw DecodeError("tiny point out of range");
    return v;
}

bool TinyGroup::scalar_in_range(const GroupScalar& s) const {
    for (std::size_t i = 0; i < 24; ++i) {
        if (s.be[i] != 0) return false;
    }
    std::uint64_t v = 0;
    for (std::size_t i = 24; i < 32; ++i) v = (v << 8) | s.be[i];
    return v < q_;
}

GroupScalar TinyGroup::random_scalar(Rng& rng) const { return make_scalar(rng.uniform(q_)); }
GroupScalar TinyGroup::scalar_from_u64(std::uint64_t v) const { return make_scalar(v); }
GroupScalar TinyGroup::scalar_from_digest(const Digest& d) const { return make_scalar(be_mod(d.bytes, q_)); }

GroupScalar TinyGroup::scalar_add(const GroupScalar& a, const GroupScalar& b) const {
    return make_scalar(value(a) + value(b));
}
GroupScalar TinyGroup::scalar_sub(const GroupScalar& a, const GroupScalar& b) const {
    return make_scalar(value(a) + q_ - value(b));
}
GroupScalar TinyGroup::scalar_mul(const GroupScalar& a, const GroupScalar& b) const {
    return make_scalar(value(a) * value(b));
}

GroupPoint TinyGroup::base_mul(const GroupScalar& k) const { return point(value(k)); }
GroupPoint TinyGroup::mul(const GroupScalar& k, const GroupPoint& p) const { return point(value(k) * value(p)); }
GroupPoint TinyGroup::add(const GroupPoint& p, const GroupPoint& q) const { return point(value(p) + value(q)); }
GroupPoint TinyGroup::sub(const GroupPoint& p, const GroupPoint& q) const { return point(value(p) + q_ - value(q)); }

GroupPoint TinyGroup::decode_point(ByteView bytes) const {
    GroupPoint p{Bytes(bytes.begin(), bytes.end())};
    (void)value(p);
    return p;
}

}  // namespace argus::crypto
