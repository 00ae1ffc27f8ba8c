#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "argus/merkle/merkle_tree.hpp"

namespace argus::merkle {

/// Shape of the three-layer tree: M licensees, N versions each, K period
/// leaves per version. Each layer is its own padded subtree, so the global
/// depth is ceil(log2 K) + ceil(log2 N) + ceil(log2 M).
struct IdTreeShape {
    std::uint32_t m = 1, n = 1, k = 1;

    unsigned depth_k() const { return ceil_log2(k); }
    unsigned depth_n() const { return ceil_log2(n); }
    unsigned depth_m() const { return ceil_log2(m); }
    unsigned depth() const { return depth_k() + depth_n() + depth_m(); }

    /// x, y, t are 1-based.
    std::uint64_t global_index(std::uint32_t x, std::uint32_t y, std::uint32_t t) const;
    /// Heights of the layer-2 (x, y) roots and layer-1 (x) roots.
    unsigned layer2_height() const { return depth_k(); }
    unsigned layer1_height() const { return depth_k() + depth_n(); }
};

/// H(var(id)); the IdMap key.
Digest id_hash(ByteView id);
/// rv1 = H(var(id) || be32(t)).
Digest id_reveal(ByteView id, std::uint32_t t);
/// H(rv1 || be32(x) || be32(y)).
Digest id_leaf_from_reveal(const Digest& rv1, std::uint32_t x, std::uint32_t y);
Digest id_leaf(ByteView id, std::uint32_t x, std::uint32_t y, std::uint32_t t);

/// Root of the K-leaf subtree of one copy.
Digest version_root(ByteView id, std::uint32_t x, std::uint32_t y, std::uint32_t k);
/// Layer-3 portion of the path, recomputed from the id alone.
MerklePath version_path(ByteView id, std::uint32_t x, std::uint32_t y, std::uint32_t t, std::uint32_t k);

/// What the owner keeps after building the tree: per licensee, the N id
/// hashes (in version order) and the N layer-2 digests. Nothing depends on
/// K. The IdMap and layer-1 roots are derived from this on load.
class OwnerIdStore {
public:
    OwnerIdStore(IdTreeShape shape, std::vector<std::vector<Digest>> id_hashes,
                 std::vector<std::vector<Digest>> layer2);

    const IdTreeShape& shape() const { return shape_; }
    const Digest& root() const { return root_; }

    /// Bytes of persistent state for licensee x: 64 * N.
    std::size_t persistent_bytes(std::uint32_t x) const;
    std::size_t persistent_bytes() const;

    /// IdMap lookup: H(id) -> (x, y).
    std::optional<std::pair<std::uint32_t, std::uint32_t>> lookup(const Digest& id_hash) const;
    const Digest& layer2(std::uint32_t x, std::uint32_t y) const;
    const Digest& layer1(std::uint32_t x) const { return layer1_.at(x - 1); }

    /// Full path from leaf (x, y, t) to the root. The layer-3 part is
    /// recomputed from `id`. Throws NotFoundError when H(id) does not map
    /// to (x, y) or the id does not reproduce the stored layer-2 digest.
    MerklePath query(std::uint32_t x, std::uint32_t y, std::uint32_t t, ByteView id) const;

private:
    IdTreeShape shape_;
    std::vector<std::vector<Digest>> id_hashes_;
    std::vector<std::vector<Digest>> layer2_;
    std::unordered_map<Digest, std::pair<std::uint32_t, std::uint32_t>> id_map_;
    std::vector<Digest> layer1_;
    std::vector<MerkleTree> layer2_trees_;
    std::optional<MerkleTree> layer1_tree_;
    Digest root_;
};

/// ids[x-1][y-1] is the watermark id of copy (x, y). Throws ConfigError on
/// an empty matrix, ragged rows, or duplicate ids.
OwnerIdStore id_tree_build(const std::vector<std::vector<Bytes>>& ids, std::uint32_t k);

}  // namespace argus::merkle
