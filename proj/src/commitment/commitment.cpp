#include "argus/commitment/commitment.hpp"

#include <stdexcept>

namespace argus::commitment {

void PeriodLayout::validate() const {
    if (total_seconds == 0) throw ConfigError("period layout: total duration must be positive");
    if (k_periods < 2) throw ConfigError("period layout: need at least two periods");
}

ConfirmationBound confirmation_bound(const PeriodLayout& layout) {
    layout.validate();
    const Money hours = layout.period_seconds() / 3600;
    return {hours, 2 * hours};
}

Digest reveal_value(ByteView secret, std::uint32_t period) {
    crypto::Hasher h;
    return h.var(secret).u32(period).finish();
}

Digest commit_digest(const Digest& rv, ByteView nonce) {
    crypto::Hasher h;
    return h.digest(rv).var(nonce).finish();
}

TagList build_tag_list(ByteView secret, std::uint32_t k_periods) {
    if (k_periods < 1) throw std::invalid_argument("build_tag_list: k_periods must be >= 1");
    TagList tags;
    tags.reserve(k_periods);
    for (std::uint32_t i = 1; i <= k_periods; ++i) tags.push_back(crypto::sha256(reveal_value(secret, i).view()));
    return tags;
}

Commitment commit(ByteView secret, std::uint32_t period, ByteView nonce) {
    if (period == 0) throw std::invalid_argument("commit: periods start at 1");
    return {commit_digest(reveal_value(secret, period), nonce), period};
}

Reveal open(ByteView secret, std::uint32_t period, ByteView nonce) {
    return {reveal_value(secret, period), Bytes(nonce.begin(), nonce.end())};
}

bool verify_reveal(const Commitment& cm, const Reveal& reveal, const TagList& tags, std::uint32_t claimed_period,
                   std::uint32_t reveal_period) {
    if (claimed_period == 0 || claimed_period > tags.size()) return false;
    if (cm.period != claimed_period || reveal_period != claimed_period + 1) return false;
    if (commit_digest(reveal.rv, reveal.nonce) != cm.cm) return false;
    return crypto::sha256(reveal.rv.view()) == tags[claimed_period - 1];
}

}  // namespace argus::commitment
