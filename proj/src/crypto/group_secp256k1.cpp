#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <memory>

#include "argus/crypto/group.hpp"

namespace argus::crypto {

namespace {

struct BnCtxDeleter {
    void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
struct BnDeleter {
    void operator()(BIGNUM* b) const { BN_free(b); }
};
struct PointDeleter {
    void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};

using CtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

void check(int ok, const char* what) {
    if (ok != 1) throw std::runtime_error(std::string("secp256k1: ") + what + " failed");
}

BnPtr to_bn(const GroupScalar& s) {
    BnPtr b(BN_bin2bn(s.be.data(), static_cast<int>(s.be.size()), nullptr));
    if (!b) throw std::bad_alloc();
    return b;
}

GroupScalar from_bn(const BIGNUM* b) {
    GroupScalar s;
    check(BN_bn2binpad(b, s.be.data(), static_cast<int>(s.be.size())) == 32 ? 1 : 0, "BN_bn2binpad");
    return s;
}

}  // namespace

struct Secp256k1Group::Impl {
    EC_GROUP* group = nullptr;
    BIGNUM* order = nullptr;

    ~Impl() {
        BN_free(order);
        EC_GROUP_free(group);
    }

    PointPtr new_point() const {
        PointPtr p(EC_POINT_new(group));
        if (!p) throw std::bad_alloc();
        return p;
    }

    GroupPoint encode(const EC_POINT* p, BN_CTX* ctx) const {
        if (EC_POINT_is_at_infinity(group, p)) return GroupPoint{Bytes{0x00}};
        GroupPoint out;
        out.encoding.resize(33);
        auto n = EC_POINT_point2oct(group, p, POINT_CONVERSION_COMPRESSED, out.encoding.data(), 33, ctx);
        if (n != 33) throw std::runtime_error("secp256k1: point encoding failed");
        return out;
    }

    PointPtr decode(const GroupPoint& p, BN_CTX* ctx) const {
        auto pt = new_point();
        if (p.encoding.size() == 1 && p.encoding[0] == 0x00) {
            check(EC_POINT_set_to_infinity(group, pt.get()), "set_to_infinity");
            return pt;
        }
        if (p.encoding.size() != 33 ||
            EC_POINT_oct2point(group, pt.get(), p.encoding.data(), p.encoding.size(), ctx) != 1) {
            throw DecodeError("invalid secp256k1 point encoding");
        }
        return pt;
    }

    template <typename F>
    GroupScalar mod_op(const GroupScalar& a, const GroupScalar& b, F f) const {
        CtxPtr ctx(BN_CTX_new());
        auto x = to_bn(a), y = to_bn(b);
        BnPtr r(BN_new());
        check(f(r.get(), x.get(), y.get(), order, ctx.get()), "scalar op");
        return from_bn(r.get());
    }
};

Secp256k1Group::Secp256k1Group() : impl_(std::make_unique<Impl>()) {
    impl_->group = EC_GROUP_new_by_curve_name(NID_secp256k1);
    if (impl_->group == nullptr) throw std::runtime_error("secp256k1 unavailable in OpenSSL");
    impl_->order = BN_dup(EC_GROUP_get0_order(impl_->group));
}

Secp256k1Group::~Secp256k1Group() = default;

bool Secp256k1Group::scalar_in_range(const GroupScalar& s) const {
    auto b = to_bn(s);
    return BN_cmp(b.get(), impl_->order) < 0;
}

GroupScalar Secp256k1Group::random_scalar(Rng& rng) const {
    // Rejection sampling: the order is just below 2^256, so retries are rare.
    for (;;) {
        GroupScalar s;
        rng.fill(s.be);
        if (scalar_in_range(s)) return s;
    }
}

GroupScalar Secp256k1Group::scalar_from_u64(std::uint64_t v) const {
    GroupScalar s;
    for (int i = 0; i < 8; ++i) s.be[31 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    return s;
}

GroupScalar Secp256k1Group::scalar_from_digest(const Digest& d) const {
    CtxPtr ctx(BN_CTX_new());
    BnPtr x(BN_bin2bn(d.bytes.data(), 32, nullptr));
    BnPtr r(BN_new());
    check(BN_nnmod(r.get(), x.get(), impl_->order, ctx.get()), "BN_nnmod");
    return from_bn(r.get());
}

GroupScalar Secp256k1Group::scalar_add(const GroupScalar& a, const GroupScalar& b) const {
    return impl_->mod_op(a, b, BN_mod_add);
}
GroupScalar Secp256k1Group::scalar_sub(const GroupScalar& a, const GroupScalar& b) const {
    return impl_->mod_op(a, b, BN_mod_sub);
}
GroupScalar Secp256k1Group::scalar_mul(const GroupScalar& a, const GroupScalar& b) const {
    return impl_->mod_op(a, b, BN_mod_mul);
}

GroupPoint Secp256k1Group::generator() const {
    CtxPtr ctx(BN_CTX_new());
    return impl_->encode(EC_GROUP_get0_generator(impl_->group), ctx.get());
}

GroupPoint Secp256k1Group::identity() const { return GroupPoint{Bytes{0x00}}; }

GroupPoint Secp256k1Group::base_mul(const GroupScalar& k) const {
    CtxPtr ctx(BN_CTX_new());
    auto kb = to_bn(k);
    auto r = impl_->new_point();
    check(EC_POINT_mul(impl_->group, r.get(), kb.get(), nullptr, nullptr, ctx.get()), "base_mul");
    return impl_->encode(r.get(), ctx.get());
}

GroupPoint Secp256k1Group::mul(const GroupScalar& k, const GroupPoint& p) const {
    CtxPtr ctx(BN_CTX_new());
    auto kb = to_bn(k);
    auto pt = impl_->decode(p, ctx.get());
    auto r = impl_->new_point();
    check(EC_POINT_mul(impl_->group, r.get(), nullptr, pt.get(), kb.get(), ctx.get()), "mul");
    return impl_->encode(r.get(), ctx.get());
}

GroupPoint Secp256k1Group::add(const GroupPoint& p, const GroupPoint& q) const {
    CtxPtr ctx(BN_CTX_new());
    auto a = impl_->decode(p, ctx.get()), b = impl_->decode(q, ctx.get());
    auto r = impl_->new_point();
    check(EC_POINT_add(impl_->group, r.get(), a.get(), b.get(), ctx.get()), "add");
    return impl_->encode(r.get(), ctx.get());
}

GroupPoint Secp256k1Group::sub(const GroupPoint& p, const GroupPoint& q) const {
    CtxPtr ctx(BN_CTX_new());
    auto a = impl_->decode(p, ctx.get()), b = impl_->decode(q, ctx.get());
    check(EC_POINT_invert(impl_->group, b.get(), ctx.get()), "invert");
    auto r = impl_->new_point();
    check(EC_POINT_add(impl_->group, r.get(), a.get(), b.get(), ctx.get()), "sub");
    return impl_->encode(r.get(), ctx.get());
}

GroupPoint Secp256k1Group::decode_point(ByteView bytes) const {
    GroupPoint p{Bytes(bytes.begin(), bytes.end())};
    CtxPtr ctx(BN_CTX_new());
    auto pt = impl_->decode(p, ctx.get());
    // Re-encode so non-canonical forms never escape.
    return impl_->encode(pt.get(), ctx.get());
}

}  // namespace argus::crypto
