#pragma once

#include <cstdint>
#include <vector>

#include "argus/crypto/hash.hpp"
#include "argus/incentive/reward.hpp"

namespace argus::commitment {

using crypto::Digest;
using Money = incentive::Money;

/// Campaign duration split into K equal sub-periods, numbered from 1.
struct PeriodLayout {
    std::uint64_t total_seconds = 0;
    std::uint32_t k_periods = 0;

    /// Throws ConfigError unless total_seconds > 0 and k_periods >= 2.
    void validate() const;
    Money period_seconds() const { return Money(total_seconds) / k_periods; }
};

struct ConfirmationBound {
    Money period_hours;      // the usual quoted figure: one period
    Money worst_case_hours;  // commit at a period start, reveal at the end of the next
};

ConfirmationBound confirmation_bound(const PeriodLayout& layout);

/// rv = H(var(secret) || be32(i)).
Digest reveal_value(ByteView secret, std::uint32_t period);
/// cm = H(rv || var(nonce)).
Digest commit_digest(const Digest& rv, ByteView nonce);

/// L[i] = H(H(secret || i)) for i = 1..K. tags[0] is L[1].
using TagList = std::vector<Digest>;
TagList build_tag_list(ByteView secret, std::uint32_t k_periods);

struct Commitment {
    Digest cm;
    std::uint32_t period = 0;
};

struct Reveal {
    Digest rv;
    Bytes nonce;
};

/// Throws std::invalid_argument when period is 0.
Commitment commit(ByteView secret, std::uint32_t period, ByteView nonce);
Reveal open(ByteView secret, std::uint32_t period, ByteView nonce);

/// Accepts iff H(rv || nonce) = cm, H(rv) = L[claimed], the commitment was
/// recorded in the claimed period, and the reveal lands in the period
/// right after it.
bool verify_reveal(const Commitment& cm, const Reveal& reveal, const TagList& tags, std::uint32_t claimed_period,
                   std::uint32_t reveal_period);

}  // namespace argus::commitment
