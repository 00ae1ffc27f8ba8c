#pragma once

#include <string>

#include "argus/contract/argus_contract.hpp"
#include "argus/ledger/ledger.hpp"

namespace argus::cli {

/// One accused licensee appealing through both routes on fresh ledgers.
struct AppealPoint {
    std::uint32_t n = 0;
    std::uint64_t argus_bytes = 0, baseline_bytes = 0;
    std::uint64_t argus_gas = 0, baseline_gas = 0;
    bool argus_ok = false, baseline_ok = false;

    double gas_ratio() const { return argus_gas == 0 ? 0.0 : static_cast<double>(baseline_gas) / static_cast<double>(argus_gas); }
};
AppealPoint measure_appeal(std::uint32_t n, std::uint64_t seed, const std::string& backend = "tiny",
                           const ledger::GasSchedule& gas = {});

/// Wall-clock of one OT session carrying 32-byte keys.
struct LatencyPoint {
    std::uint32_t n = 0;
    double owner_init_ms = 0, owner_transfer_ms = 0, licensee_receive_ms = 0;
};
LatencyPoint measure_ot_latency(std::uint32_t n, std::uint64_t seed, const std::string& backend = "tiny");

/// `reports` distinct informers report licensee 1's leaked copy, spread
/// over five periods.
struct CachingPoint {
    std::uint32_t n = 0, k = 0;
    contract::CachePolicy policy = contract::CachePolicy::Checkpoints;
    std::uint32_t reports = 0, accepted = 0;
    std::uint64_t hash_ops = 0;         // every metered hash in the report calls
    std::uint64_t merkle_hash_ops = 0;  // the path folds alone
    std::uint64_t gas = 0;
};
CachingPoint measure_caching(contract::CachePolicy policy, std::uint32_t n, std::uint32_t k, std::uint32_t reports,
                             std::uint64_t seed, const ledger::GasSchedule& gas = {});

/// Bytes received by one licensee fetching one of N payloads.
struct BandwidthPoint {
    std::uint32_t n = 0;
    std::size_t payload_bytes = 0;
    std::uint64_t hybrid_received = 0, direct_received = 0;
    bool hybrid_ok = false, direct_ok = false;

    std::uint64_t hybrid_bound() const { return 3 * (payload_bytes + 32ULL * n); }
};
BandwidthPoint measure_bandwidth(std::uint32_t n, std::size_t payload_bytes, std::uint64_t seed,
                                 const std::string& backend = "tiny");

const char* to_string(contract::CachePolicy p);

}  // namespace argus::cli
