#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string_view>

#include "argus/bytes.hpp"
#include "argus/crypto/hash.hpp"
#include "argus/rng.hpp"

namespace argus::crypto {

/// Integer modulo the group order, held as a 32-byte big-endian value.
/// Always reduced: 0 <= value < q.
struct GroupScalar {
    std::array<std::uint8_t, 32> be{};

    auto operator<=>(const GroupScalar&) const = default;
    bool is_zero() const;
};

/// Group element in its canonical encoding. Two points are equal iff their
/// encodings are equal, so the encoding doubles as the value.
struct GroupPoint {
    Bytes encoding;

    bool operator==(const GroupPoint&) const = default;
    std::string hex() const { return to_hex(encoding); }
};

/// Prime-order cyclic group with a distinguished generator G.
///
/// Two backends implement this: a tiny additive group Z_q (discrete log is
/// trivial, so tests can brute-force it) and secp256k1.
class Group {
public:
    virtual ~Group() = default;

    virtual std::string_view name() const = 0;
    /// Width of an encoded scalar.
    virtual std::size_t scalar_bytes() const = 0;
    /// Width of an encoded non-identity point.
    virtual std::size_t point_bytes() const = 0;

    virtual GroupScalar random_scalar(Rng& rng) const = 0;
    virtual GroupScalar scalar_from_u64(std::uint64_t v) const = 0;
    /// Reduces a digest (read big-endian) modulo q.
    virtual GroupScalar scalar_from_digest(const Digest& d) const = 0;
    virtual GroupScalar scalar_add(const GroupScalar& a, const GroupScalar& b) const = 0;
    virtual GroupScalar scalar_sub(const GroupScalar& a, const GroupScalar& b) const = 0;
    virtual GroupScalar scalar_mul(const GroupScalar& a, const GroupScalar& b) const = 0;

    virtual GroupPoint generator() const = 0;
    virtual GroupPoint identity() const = 0;
    virtual GroupPoint base_mul(const GroupScalar& k) const = 0;
    virtual GroupPoint mul(const GroupScalar& k, const GroupPoint& p) const = 0;
    virtual GroupPoint add(const GroupPoint& p, const GroupPoint& q) const = 0;
    virtual GroupPoint sub(const GroupPoint& p, const GroupPoint& q) const = 0;

    /// Validates an untrusted encoding. Throws DecodeError.
    virtual GroupPoint decode_point(ByteView bytes) const = 0;

    Bytes encode_scalar(const GroupScalar& s) const;
    /// Fixed-width decode; rejects values >= q. Throws DecodeError.
    GroupScalar decode_scalar(ByteView bytes) const;

    bool is_identity(const GroupPoint& p) const { return p == identity(); }

protected:
    virtual bool scalar_in_range(const GroupScalar& s) const = 0;
};

/// Additive group Z_q with generator 1. Discrete log is the identity map.
class TinyGroup final : public Group {
public:
    explicit TinyGroup(std::uint64_t q = 101);

    std::uint64_t order() const { return q_; }
    GroupPoint point(std::uint64_t v) const;
    std::uint64_t value(const GroupPoint& p) const;
    std::uint64_t value(const GroupScalar& s) const;

    std::string_view name() const override { return "tiny"; }
    std::size_t scalar_bytes() const override { return width_; }
    std::size_t point_bytes() const override { return width_; }

    GroupScalar random_scalar(Rng& rng) const override;
    GroupScalar scalar_from_u64(std::uint64_t v) const override;
    GroupScalar scalar_from_digest(const Digest& d) const override;
    GroupScalar scalar_add(const GroupScalar& a, const GroupScalar& b) const override;
    GroupScalar scalar_sub(const GroupScalar& a, const GroupScalar& b) const override;
    GroupScalar scalar_mul(const GroupScalar& a, const GroupScalar& b) const override;

    GroupPoint generator() const override { return point(1); }
    GroupPoint identity() const override { return point(0); }
    GroupPoint base_mul(const GroupScalar& k) const override;
    GroupPoint mul(const GroupScalar& k, const GroupPoint& p) const override;
    GroupPoint add(const GroupPoint& p, const GroupPoint& q) const override;
    GroupPoint sub(const GroupPoint& p, const GroupPoint& q) const override;
    GroupPoint decode_point(ByteView bytes) const override;

protected:
    bool scalar_in_range(const GroupScalar& s) const override;

private:
    GroupScalar make_scalar(std::uint64_t v) const;

    std::uint64_t q_;
    std::size_t width_;
};

/// secp256k1 through OpenSSL. Points use 33-byte compressed SEC1 encoding;
/// the identity encodes as the single byte 0x00.
class Secp256k1Group final : public Group {
public:
    Secp256k1Group();
    ~Secp256k1Group() override;

    std::string_view name() const override { return "secure"; }
    std::size_t scalar_bytes() const override { return 32; }
    std::size_t point_bytes() const override { return 33; }

    GroupScalar random_scalar(Rng& rng) const override;
    GroupScalar scalar_from_u64(std::uint64_t v) const override;
    GroupScalar scalar_from_digest(const Digest& d) const override;
    GroupScalar scalar_add(const GroupScalar& a, const GroupScalar& b) const override;
    GroupScalar scalar_sub(const GroupScalar& a, const GroupScalar& b) const override;
    GroupScalar scalar_mul(const GroupScalar& a, const GroupScalar& b) const override;

    GroupPoint generator() const override;
    GroupPoint identity() const override;
    GroupPoint base_mul(const GroupScalar& k) const override;
    GroupPoint mul(const GroupScalar& k, const GroupPoint& p) const override;
    GroupPoint add(const GroupPoint& p, const GroupPoint& q) const override;
    GroupPoint sub(const GroupPoint& p, const GroupPoint& q) const override;
    GroupPoint decode_point(ByteView bytes) const override;

protected:
    bool scalar_in_range(const GroupScalar& s) const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// "tiny" (Z_101) or "secure" (secp256k1). Throws ConfigError otherwise.
std::shared_ptr<const Group> make_group(std::string_view backend);

/// Process-wide secp256k1 instance.
const Group& secure_group();

}  // namespace argus::crypto
