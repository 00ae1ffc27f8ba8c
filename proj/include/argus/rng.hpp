#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "argus/bytes.hpp"

namespace argus {

/// Seeded deterministic generator. Every run with the same seed draws the
/// same sequence on every platform (no std distributions involved).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, bound). bound must be nonzero.
    std::uint64_t uniform(std::uint64_t bound);

    /// Uniform in [lo, hi].
    std::uint64_t uniform_range(std::uint64_t lo, std::uint64_t hi) { return lo + uniform(hi - lo + 1); }

    bool coin() { return (next_u64() & 1) != 0; }

    void fill(std::span<std::uint8_t> out);
    Bytes bytes(std::size_t n);

    /// Independent child stream derived from the construction seed and a
    /// label. Does not depend on how far this stream has advanced.
    Rng fork(std::string_view label) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace argus
