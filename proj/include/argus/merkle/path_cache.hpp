#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "argus/merkle/merkle_tree.hpp"

namespace argus::merkle {

/// Contract-side memo of internal nodes already verified against the root.
/// Keyed by heap position: the node at height h above leaf i in a tree of
/// depth D sits at 2^(D-h) + (i >> h); the root is 1.
class PathCache {
public:
    /// Caches every internal node below the root.
    explicit PathCache(unsigned depth);
    /// Caches only nodes at the listed heights (each in [1, depth)).
    PathCache(unsigned depth, std::vector<unsigned> checkpoint_heights);

    static std::uint64_t heap_index(unsigned depth, unsigned height, std::uint64_t leaf_index);

    unsigned depth() const { return depth_; }
    bool caches_height(unsigned height) const;
    std::optional<Digest> get(unsigned height, std::uint64_t leaf_index) const;
    /// Lowest height holding a cached ancestor of the leaf, or depth() if none.
    unsigned truncation_height(std::uint64_t leaf_index) const;
    std::size_t size() const { return nodes_.size(); }

private:
    friend struct CachedVerifier;
    void put(unsigned height, std::uint64_t leaf_index, const Digest& d);

    unsigned depth_;
    std::vector<bool> cached_heights_;
    std::unordered_map<std::uint64_t, Digest> nodes_;
};

struct CachedVerifyResult {
    bool ok = false;
    /// The path stopped below the root at a node that is not cached.
    bool needs_full_path = false;
    std::uint64_t hash_ops = 0;
    std::uint32_t nodes_inserted = 0;
};

/// Verifies a full or truncated path. A truncated path must end exactly at
/// a cached node; on success the freshly verified nodes join the cache.
CachedVerifyResult cached_verify(PathCache& cache, const Digest& root, const MerklePath& path);

/// Copy of the path cut at the lowest cached ancestor.
MerklePath truncate_path(const PathCache& cache, const MerklePath& full);

}  // namespace argus::merkle
