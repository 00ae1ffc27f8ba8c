#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "argus/contract/calls.hpp"
#include "argus/incentive/reward.hpp"
#include "argus/ledger/ledger.hpp"
#include "argus/merkle/id_tree.hpp"
#include "argus/merkle/path_cache.hpp"

namespace argus::contract {

using ledger::Address;
using ledger::Money;

enum class Status { Normal, Accused, Guilty, Exonerated };
const char* to_string(Status s);

enum class CachePolicy { None, Checkpoints, All };
CachePolicy parse_cache_policy(const std::string& s);

struct ArgusConfig {
    Address owner;
    GroupPoint owner_pk;
    std::vector<Address> licensees;  // licensees[x-1]
    std::vector<GroupPoint> licensee_pks;
    std::shared_ptr<const crypto::Group> group;
    GroupPoint a_s;
    merkle::IdTreeShape shape;  // m = licensees, n = versions, k = periods
    std::uint32_t timeout = 2;
    Money v = 1000000;  // per-licensee pool, also the schedule's c
    int guarantee_len = 20;
    CachePolicy cache = CachePolicy::Checkpoints;
    bool p_root_mode = false;
    bool baseline_appeal = false;
};

struct CmEntry {
    Digest cm;
    std::uint32_t x = 0, y = 0;
    bool consumed = false;
};

struct LicenseeState {
    Status status = Status::Normal;
    std::uint32_t version = 0;
    std::uint32_t report_time = 0;
    std::uint32_t report_number = 0;
    std::map<Address, bool> is_informer;
    Money paid = 0;
    bool allocation_started = false;
};

/// Functions: deposit, store, report, appeal, appeal_baseline,
/// allocate_bounty, set_guilty.
class ArgusContract final : public ledger::Contract {
public:
    explicit ArgusContract(ArgusConfig cfg);

    std::unique_ptr<ledger::Contract> clone() const override { return std::make_unique<ArgusContract>(*this); }
    void call(ledger::CallContext& ctx, const std::string& function, ByteView calldata) override;

    const ArgusConfig& config() const { return cfg_; }
    const incentive::RewardSchedule& schedule() const { return schedule_; }
    const LicenseeState& licensee(std::uint32_t x) const { return licensees_.at(x - 1); }
    const std::optional<Digest>& rt() const { return rt_; }
    const std::vector<GroupPoint>& p_list() const { return p_list_; }
    const std::vector<CmEntry>& cm_list(std::uint32_t period) const;
    const std::optional<Digest>& p_root() const { return p_root_; }
    const merkle::PathCache& path_cache() const { return cache_; }
    bool started() const { return started_; }

private:
    void deposit(ledger::CallContext& ctx);
    void store(ledger::CallContext& ctx, ByteView data);
    void report(ledger::CallContext& ctx, ByteView data);
    void appeal(ledger::CallContext& ctx, ByteView data);
    void appeal_baseline(ledger::CallContext& ctx, ByteView data);
    void allocate_bounty(ledger::CallContext& ctx, ByteView data);
    void set_guilty(ledger::CallContext& ctx, ByteView data);

    LicenseeState& licensee_mut(std::uint32_t x);
    /// P_l from the on-chain list or via its root-committed proof.
    GroupPoint resolve_point(ledger::CallContext& ctx, std::uint32_t l, const std::optional<PointProof>& proof);
    void check_appeal_gates(ledger::CallContext& ctx, std::uint32_t x, std::uint32_t l) const;

    ArgusConfig cfg_;
    incentive::RewardSchedule schedule_;
    std::optional<Digest> rt_;
    std::optional<Digest> p_root_;
    std::vector<GroupPoint> p_list_;
    std::map<std::uint32_t, std::vector<CmEntry>> cm_lists_;
    std::vector<LicenseeState> licensees_;
    merkle::PathCache cache_;
    bool started_ = false;
};

}  // namespace argus::contract
