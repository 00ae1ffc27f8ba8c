#pragma once

#include <cstdint>
#include <vector>

#include "argus/crypto/hash.hpp"

namespace argus::merkle {

using crypto::Digest;

/// Inclusion proof. Bit h of `index` says whether the node at height h is a
/// right child, so the index doubles as the direction bits.
struct MerklePath {
    Digest leaf;
    std::uint64_t index = 0;
    std::vector<Digest> siblings;  // bottom-up

    Bytes encode() const;
    static MerklePath decode(ByteView bytes);
};

/// ceil(log2(n)), 0 for n <= 1.
unsigned ceil_log2(std::uint64_t n);

/// Binary Merkle tree; odd levels are padded by duplicating the last node.
class MerkleTree {
public:
    /// Throws std::invalid_argument on an empty leaf set.
    explicit MerkleTree(std::vector<Digest> leaves);

    const Digest& root() const { return levels_.back().front(); }
    std::size_t leaf_count() const { return levels_.front().size(); }
    unsigned depth() const { return static_cast<unsigned>(levels_.size() - 1); }
    /// Throws std::out_of_range.
    MerklePath prove(std::uint64_t index) const;
    /// Number of hash_pair calls made while building.
    std::uint64_t hash_ops() const { return hash_ops_; }

private:
    std::vector<std::vector<Digest>> levels_;
    std::uint64_t hash_ops_ = 0;
};

/// Root implied by the first `height` siblings of the path.
Digest fold(const MerklePath& path, std::size_t height);
Digest fold(const MerklePath& path);
bool verify(const Digest& root, const MerklePath& path);

}  // namespace argus::merkle
