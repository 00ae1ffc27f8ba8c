#pragma once

#include <optional>
#include <string>
#include <vector>

#include "argus/merkle/merkle_tree.hpp"
#include "argus/ot/ot_appeal.hpp"

namespace argus::contract {

using crypto::Digest;
using crypto::GroupPoint;

/// Calldata layouts. Every call encodes with ByteWriter so receipts meter
/// real sizes.
enum class StoreKind : std::uint8_t { PBatch = 1, Rt = 2, Cm = 3, PRoot = 4 };

struct StoreCall {
    StoreKind kind = StoreKind::Cm;
    std::vector<GroupPoint> points;  // PBatch
    Digest digest;                   // Rt, Cm, PRoot
    std::uint32_t x = 0, y = 0;      // Cm

    Bytes encode() const;
    static StoreCall decode(const crypto::Group& g, ByteView bytes);
};

struct ReportCall {
    Digest rv1;
    merkle::MerklePath path;
    std::string informer;

    Bytes encode() const;
    static ReportCall decode(ByteView bytes);
};

/// P_l with its inclusion proof, for when only the P-list root is on chain.
struct PointProof {
    GroupPoint point;
    merkle::MerklePath path;
};

struct AppealCall {
    std::uint32_t x = 0;
    ot::AppealSubmission sub;
    std::optional<PointProof> p_proof;

    Bytes encode(const crypto::Group& g) const;
    static AppealCall decode(const crypto::Group& g, ByteView bytes);
};

struct BaselineAppealCall {
    std::uint32_t x = 0;
    ot::BaselineAppeal appeal;

    Bytes encode(const crypto::Group& g) const;
    static BaselineAppealCall decode(const crypto::Group& g, ByteView bytes);
};

struct AllocateCall {
    std::uint32_t x = 0;
    std::string informer;

    Bytes encode() const;
    static AllocateCall decode(ByteView bytes);
};

struct LicenseeCall {
    std::uint32_t x = 0;

    Bytes encode() const;
    static LicenseeCall decode(ByteView bytes);
};

/// Leaf committing P_i in the optional P-list tree.
Digest p_leaf(const GroupPoint& p);

}  // namespace argus::contract
