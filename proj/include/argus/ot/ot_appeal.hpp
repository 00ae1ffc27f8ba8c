#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "argus/crypto/group.hpp"
#include "argus/crypto/schnorr.hpp"

namespace argus::ot {

using crypto::Digest;
using crypto::Group;
using crypto::GroupPoint;
using crypto::GroupScalar;
using crypto::Signature;

inline constexpr std::size_t kChecksumBytes = 8;

/// Published by the owner: P_1..P_N, a_s = s*G, and a signature over the
/// P list digest.
struct OtPublicParams {
    std::shared_ptr<const Group> group;
    std::vector<GroupPoint> points;  // points[i-1] = P_i
    GroupPoint a_s;
    Signature points_sig;

    std::uint32_t n() const { return static_cast<std::uint32_t>(points.size()); }
    const GroupPoint& point(std::uint32_t i) const { return points.at(i - 1); }
    Digest points_digest() const;
};

bool verify_params(const OtPublicParams& params, const GroupPoint& owner_pk);

/// Owner-side secret: s, P'_i = s*P_i, and the R values already co-signed.
class OwnerOtSecret {
public:
    OwnerOtSecret(GroupScalar s, std::vector<GroupPoint> p_prime) : s_(s), p_prime_(std::move(p_prime)) {}

    const GroupScalar& s() const { return s_; }
    const GroupPoint& p_prime(std::uint32_t i) const { return p_prime_.at(i - 1); }

    /// False if R was already registered.
    bool register_evidence(const GroupPoint& r);
    bool has_evidence(const GroupPoint& r) const;

private:
    GroupScalar s_;
    std::vector<GroupPoint> p_prime_;
    mutable std::mutex mu_;
    std::set<Bytes> seen_;
};

struct OtRecord {
    GroupScalar r;
    std::uint32_t l = 0;
};

/// Dual-signed evidence: sig_licensee over enc(R), sig_owner over
/// enc(R) || sig_licensee.
struct OtEvidence {
    GroupPoint r_point;
    Signature sig_licensee;
    Signature sig_owner;
};

struct Initialized {
    OtPublicParams params;
    std::unique_ptr<OwnerOtSecret> secret;
};

/// Throws std::invalid_argument when n < 2.
Initialized initialize(std::shared_ptr<const Group> group, std::uint32_t n, Rng& rng, const GroupScalar& owner_sk);

/// Licensee picks l and fresh randomness r.
OtRecord choose(const OtPublicParams& params, std::uint32_t l, Rng& rng);

/// R = P_l - r*G.
GroupPoint evidence_point(const OtPublicParams& params, const OtRecord& record);

struct EvidenceRequest {
    GroupPoint r_point;
    Signature sig_licensee;
};

EvidenceRequest request_evidence(const OtPublicParams& params, const OtRecord& record, const GroupScalar& licensee_sk);

/// Owner checks the licensee signature and freshness of R, then co-signs.
/// Throws ProtocolError on a bad signature or a reused R.
OtEvidence countersign(const OtPublicParams& params, OwnerOtSecret& secret, const EvidenceRequest& req,
                       const GroupPoint& licensee_pk, const GroupScalar& owner_sk);

/// Both steps at once, for drivers that play both sides.
OtEvidence generate_evidence(const OtPublicParams& params, OwnerOtSecret& secret, const OtRecord& record,
                             const GroupScalar& licensee_sk, const GroupPoint& licensee_pk, const GroupScalar& owner_sk);

bool verify_evidence(const OtEvidence& ev, const GroupPoint& licensee_pk, const GroupPoint& owner_pk);

/// frame(D) = D || first 8 bytes of SHA-256(D).
Bytes frame(ByteView payload);
/// Throws DecodeError on a checksum mismatch.
Bytes unframe(ByteView framed);

/// E_i = keystream(P'_i - s*R, a_s, i) xor frame(D_i). Shorter payloads are
/// zero-padded to the longest. Throws ProtocolError unless the evidence is
/// valid and was co-signed through `secret`.
std::vector<Bytes> transfer(const OtPublicParams& params, const OwnerOtSecret& secret, const OtEvidence& ev,
                            const GroupPoint& licensee_pk, const GroupPoint& owner_pk,
                            const std::vector<Bytes>& payloads);

/// D_l from E_l with key r*a_s. Throws DecodeError on length or checksum
/// failure.
Bytes receive(const OtPublicParams& params, const std::vector<Bytes>& e, const OtRecord& record);

/// Attempts slot j with the key a record-holder can derive. nullopt on
/// checksum failure.
std::optional<Bytes> try_open(const OtPublicParams& params, const Bytes& e_j, std::uint32_t j, const GroupPoint& q);

/// Constant-size appeal: var(R) || var(sig_L) || var(sig_O) || var(r) || be32(l).
struct AppealSubmission {
    GroupPoint r_point;
    Signature sig_licensee;
    Signature sig_owner;
    GroupScalar r;
    std::uint32_t l = 0;

    Bytes encode(const Group& g) const;
    /// Throws DecodeError.
    static AppealSubmission decode(const Group& g, ByteView bytes);
};

AppealSubmission make_appeal(const OtEvidence& ev, const OtRecord& record);

enum class Verdict { FalselyAccused, AppealFails };

/// FALSELY_ACCUSED iff both signatures verify, P_l - r*G = R and l != l_x.
/// Never throws.
Verdict appeal_verdict(const OtPublicParams& params, const AppealSubmission& sub, const GroupPoint& licensee_pk,
                       const GroupPoint& owner_pk, std::uint32_t accused_index);

/// Digest of the whole E vector, signed by the owner for the O(N) baseline.
Digest transcript_digest(const std::vector<Bytes>& e);

/// O(N) baseline: the appellant ships the full transcript.
struct BaselineAppeal {
    AppealSubmission core;
    std::vector<Bytes> transcript;
    Signature transcript_sig;

    Bytes encode(const Group& g) const;
    static BaselineAppeal decode(const Group& g, ByteView bytes);
};

}  // namespace argus::ot
