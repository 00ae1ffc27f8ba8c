#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "argus/contract/argus_contract.hpp"
#include "argus/crypto/schnorr.hpp"
#include "argus/ledger/ledger.hpp"
#include "argus/merkle/id_tree.hpp"
#include "argus/ot/ot_appeal.hpp"
#include "argus/pir/pir.hpp"
#include "argus/watermark/watermark.hpp"

namespace argus::actors {

using contract::Address;
using ledger::Money;

inline const Address kContractAddress = "argus";

struct CampaignConfig {
    std::uint32_t lambda = 128;
    std::uint32_t n_versions = 16;
    std::uint32_t k_periods = 8;
    std::uint32_t m_licensees = 2;
    Money v = 1000000;
    int guarantee_len = 20;
    std::uint32_t timeout = 2;
    std::string backend = "tiny";
    /// Asset payload; generated from the seed when empty.
    Bytes asset;
    std::size_t asset_bytes = 0;  // 0: two mark regions per segment
    contract::CachePolicy cache = contract::CachePolicy::Checkpoints;
    bool p_root_mode = false;
    bool baseline_appeal = false;
    bool hybrid = true;
    std::uint32_t p_batch = 256;
    ledger::GasSchedule gas;

    std::uint32_t segments() const { return watermark::segments_for(n_versions); }
    std::size_t id_bytes() const { return lambda / 8; }
    /// Throws ConfigError.
    void validate() const;
};

class OwnerActor {
public:
    OwnerActor(const CampaignConfig& cfg, std::shared_ptr<const crypto::Group> group, Rng rng);

    const Address& address() const { return address_; }
    const crypto::KeyPair& keys() const { return keys_; }

    /// Builds versions, ids, the id tree and OT parameters, deploys the
    /// contract and funds it. Throws ConfigError before any ledger write if
    /// the configuration is inconsistent, and if a contract already exists.
    void initiate(ledger::Ledger& ledger, const std::vector<Address>& licensees,
                  const std::vector<crypto::GroupPoint>& licensee_pks);

    const ot::OtPublicParams& ot_params() const { return params_; }
    ot::OwnerOtSecret& ot_secret() { return *secret_; }
    const merkle::OwnerIdStore& id_store() const { return *store_; }
    const watermark::VersionFamily& family(std::uint32_t x) const { return families_.at(x - 1); }
    watermark::WatermarkId id_of(std::uint32_t x, std::uint32_t y) const { return family(x).version_id(y - 1); }
    Bytes copy_of(std::uint32_t x, std::uint32_t y) const { return family(x).assemble(y - 1); }
    std::vector<Bytes> versions_of(std::uint32_t x) const;

    ot::OtEvidence countersign(const ot::EvidenceRequest& req, const crypto::GroupPoint& licensee_pk);
    pir::ShareResult share(std::uint32_t x, const ot::OtEvidence& ev, const crypto::GroupPoint& licensee_pk,
                           const ot::OtRecord& record, Rng& rng);

    /// Public lookup service for informers.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> lookup(const watermark::WatermarkId& id) const;
    merkle::MerklePath serve_path(std::uint32_t x, std::uint32_t y, std::uint32_t t, const watermark::WatermarkId& id) const;

private:
    CampaignConfig cfg_;
    std::shared_ptr<const crypto::Group> group_;
    Rng rng_;
    Address address_ = "owner";
    crypto::KeyPair keys_;
    ot::OtPublicParams params_;
    std::unique_ptr<ot::OwnerOtSecret> secret_;
    std::vector<watermark::VersionFamily> families_;
    std::optional<merkle::OwnerIdStore> store_;
    std::map<std::uint32_t, pir::HybridOwner> hybrid_;
};

enum class LicenseeStrategy { Honest, Leaker, GuiltyAppealer };
const char* to_string(LicenseeStrategy s);
LicenseeStrategy parse_licensee_strategy(const std::string& s);

class LicenseeActor {
public:
    LicenseeActor(std::uint32_t x, LicenseeStrategy strategy, Rng rng);

    std::uint32_t x() const { return x_; }
    const Address& address() const { return address_; }
    const crypto::KeyPair& keys() const { return keys_; }
    LicenseeStrategy strategy() const { return strategy_; }
    const std::optional<ot::OtRecord>& record() const { return record_; }
    const std::optional<ot::OtEvidence>& evidence() const { return evidence_; }
    const Bytes& copy() const { return copy_; }
    const pir::BandwidthLedger& bandwidth() const { return bandwidth_; }

    /// ShareData against the owner. Throws ProtocolError on bad evidence.
    void acquire(OwnerActor& owner);
    bool leaks() const { return strategy_ != LicenseeStrategy::Honest; }
    bool appeals() const { return strategy_ != LicenseeStrategy::Leaker; }

    /// Submits appeals; a guilty appealer also tries a forged index.
    std::vector<ledger::Receipt> appeal(ledger::Ledger& ledger, const OwnerActor& owner) const;

private:
    std::uint32_t x_;
    LicenseeStrategy strategy_;
    Rng rng_;
    Address address_;
    crypto::KeyPair keys_;
    std::optional<ot::OtRecord> record_;
    std::optional<ot::OtEvidence> evidence_;
    Bytes copy_;
    pir::BandwidthLedger bandwidth_;
};

enum class InformerKind { Honest, Sybil, Replayer, Guesser, Silent };
const char* to_string(InformerKind k);

struct InformerSpec {
    InformerKind kind = InformerKind::Honest;
    std::uint32_t sybil_k = 1;
    std::string name;
};
InformerSpec parse_informer_spec(const std::string& s, const std::string& name);

/// One address's pending commitment for a copy.
struct PendingReport {
    Address address;
    watermark::WatermarkId id;
    crypto::Digest rv1;
    std::uint32_t x = 0, y = 0;
    std::uint32_t period = 0;
    bool fabricated = false;
};

class InformerActor {
public:
    InformerActor(InformerSpec spec, Rng rng);

    const InformerSpec& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }
    /// Every address this informer controls.
    std::vector<Address> addresses() const;

    /// Commit phase for a pirated copy. Returns no receipts when the copy
    /// carries no detectable, registered watermark.
    std::vector<ledger::Receipt> commit(ledger::Ledger& ledger, const OwnerActor& owner, const Bytes& copy,
                                        std::uint32_t segments, std::size_t id_bytes);
    /// Guesser commit: a random id against a random copy position.
    std::vector<ledger::Receipt> commit_guess(ledger::Ledger& ledger, const CampaignConfig& cfg);
    /// Reveal phase for everything committed in the previous period.
    std::vector<ledger::Receipt> reveal(ledger::Ledger& ledger, const OwnerActor& owner, const merkle::IdTreeShape& shape);

    /// Replayer: copies a reveal seen on chain, both verbatim in the same
    /// period and re-committed under its own address.
    std::vector<ledger::Receipt> replay_now(ledger::Ledger& ledger, const ledger::Receipt& observed);
    std::vector<ledger::Receipt> replay_commit(ledger::Ledger& ledger, const ledger::Receipt& observed);
    std::vector<ledger::Receipt> replay_reveal(ledger::Ledger& ledger);

private:
    InformerSpec spec_;
    Rng rng_;
    std::vector<PendingReport> pending_;
    std::vector<std::pair<contract::ReportCall, std::uint32_t>> replays_;
};

/// Submits a report with the path truncated at the contract's cache.
ledger::Receipt submit_report(ledger::Ledger& ledger, const crypto::Digest& rv1, const merkle::MerklePath& full_path,
                              const Address& informer);

const contract::ArgusContract& argus(const ledger::Ledger& ledger);

}  // namespace argus::actors
