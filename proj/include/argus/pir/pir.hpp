#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "argus/ot/ot_appeal.hpp"

namespace argus::pir {

inline constexpr std::size_t kKeyBytes = 32;
/// be32 length prefix + 8-byte checksum.
inline constexpr std::size_t kCipherOverhead = 12;

/// C = keystream(K) xor (be32 |D| || D || zero pad to width || checksum8).
Bytes sym_encrypt(ByteView key, ByteView payload, std::size_t width);
/// Throws DecodeError on a checksum or length failure.
Bytes sym_decrypt(ByteView key, ByteView ciphertext);

/// All N ciphertexts, padded to a common width. Needs no session state.
struct CipherStore {
    std::vector<Bytes> ciphertexts;

    std::uint32_t n() const { return static_cast<std::uint32_t>(ciphertexts.size()); }
    std::size_t width() const { return ciphertexts.empty() ? 0 : ciphertexts.front().size(); }
};

/// Throws std::invalid_argument when the counts differ.
CipherStore encrypt_all(const std::vector<Bytes>& payloads, const std::vector<Bytes>& keys);

/// Per-(phase, party) byte counters.
class BandwidthLedger {
public:
    struct Counts {
        std::uint64_t sent = 0;
        std::uint64_t received = 0;
    };

    void transfer(const std::string& phase, const std::string& from, const std::string& to, std::uint64_t bytes);
    std::uint64_t received(const std::string& party) const;
    std::uint64_t sent(const std::string& party) const;
    const std::map<std::pair<std::string, std::string>, Counts>& rows() const { return rows_; }
    void reset() { rows_.clear(); }
    void merge(const BandwidthLedger& other);

private:
    std::map<std::pair<std::string, std::string>, Counts> rows_;
};

/// Query masks are ceil(N/8) bytes; bit (i-1) selects item i.
std::size_t mask_bytes(std::uint32_t n);
bool mask_bit(ByteView mask, std::uint32_t i);

/// Passive XOR responder.
class PirServer {
public:
    explicit PirServer(std::shared_ptr<const CipherStore> store) : store_(std::move(store)) {}
    /// XOR of the selected ciphertexts. Throws DecodeError on a bad mask.
    Bytes answer(ByteView mask) const;
    std::uint32_t n() const { return store_->n(); }

private:
    std::shared_ptr<const CipherStore> store_;
};

struct PirQuery {
    Bytes q1, q2;  // q2 = q1 xor e_l
};

PirQuery make_query(std::uint32_t n, std::uint32_t l, Rng& rng);

/// Two-server fetch of C_l. Throws ConfigError unless exactly two servers.
Bytes pir_fetch(const std::vector<const PirServer*>& servers, std::uint32_t l, Rng& rng, BandwidthLedger& ledger,
                const std::string& client = "licensee");

/// Owner-side offline material: per-version keys and the replicated store.
struct HybridOwner {
    std::vector<Bytes> keys;
    std::shared_ptr<const CipherStore> store;
    PirServer server1, server2;
};

HybridOwner prepare_hybrid(const std::vector<Bytes>& payloads, Rng& rng);

struct ShareResult {
    Bytes payload;
    BandwidthLedger ledger;
};

/// Keys travel through OT in key-only mode; C_l through the PIR servers.
ShareResult hybrid_share(const ot::OtPublicParams& params, const ot::OwnerOtSecret& secret, const ot::OtEvidence& ev,
                         const crypto::GroupPoint& licensee_pk, const crypto::GroupPoint& owner_pk,
                         const HybridOwner& owner, const ot::OtRecord& record, Rng& rng);

/// Baseline: all N payloads go through OT directly.
ShareResult direct_share(const ot::OtPublicParams& params, const ot::OwnerOtSecret& secret, const ot::OtEvidence& ev,
                         const crypto::GroupPoint& licensee_pk, const crypto::GroupPoint& owner_pk,
                         const std::vector<Bytes>& payloads, const ot::OtRecord& record);

/// Bytes of the evidence exchange (R, two signatures), charged to both variants.
void record_evidence_exchange(const ot::OtEvidence& ev, BandwidthLedger& ledger);

}  // namespace argus::pir
