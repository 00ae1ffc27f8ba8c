#include "argus/merkle/path_cache.hpp"

#include <stdexcept>

namespace argus::merkle {

PathCache::PathCache(unsigned depth) : depth_(depth), cached_heights_(depth + 1, false) {
    if (depth >= 63) throw std::invalid_argument("path cache depth too large");
    for (unsigned h = 1; h < depth; ++h) cached_heights_[h] = true;
}

PathCache::PathCache(unsigned depth, std::vector<unsigned> checkpoint_heights)
    : depth_(depth), cached_heights_(depth + 1, false) {
    if (depth >= 63) throw std::invalid_argument("path cache depth too large");
    for (auto h : checkpoint_heights) {
        if (h >= 1 && h < depth) cached_heights_[h] = true;
    }
}

std::uint64_t PathCache::heap_index(unsigned depth, unsigned height, std::uint64_t leaf_index) {
    return (1ULL << (depth - height)) + (leaf_index >> height);
}

bool PathCache::caches_height(unsigned height) const { return height < cached_heights_.size() && cached_heights_[height]; }

std::optional<Digest> PathCache::get(unsigned height, std::uint64_t leaf_index) const {
    if (height > depth_) return std::nullopt;
    auto it = nodes_.find(heap_index(depth_, height, leaf_index));
    if (it == nodes_.end()) return std::nullopt;
    return it->second;
}

unsigned PathCache::truncation_height(std::uint64_t leaf_index) const {
    for (unsigned h = 1; h < depth_; ++h) {
        if (caches_height(h) && nodes_.count(heap_index(depth_, h, leaf_index)) != 0) return h;
    }
    return depth_;
}

void PathCache::put(unsigned height, std::uint64_t leaf_index, const Digest& d) {
    nodes_[heap_index(depth_, height, leaf_index)] = d;
}

struct CachedVerifier {
    static CachedVerifyResult run(PathCache& cache, const Digest& root, const MerklePath& path) {
        CachedVerifyResult res;
        const auto len = static_cast<unsigned>(path.siblings.size());
        const unsigned depth = cache.depth_;
        if (len > depth || (depth < 64 && (path.index >> depth) != 0)) return res;

        Digest target = root;
        if (len < depth) {
            auto hit = cache.get(len, path.index);
            if (!hit || !cache.caches_height(len)) {
                res.needs_full_path = true;
                return res;
            }
            target = *hit;
        }

        std::vector<Digest> computed;
        computed.reserve(len);
        Digest cur = path.leaf;
        for (unsigned h = 0; h < len; ++h) {
            cur = (path.index >> h & 1) ? crypto::hash_pair(path.siblings[h], cur)
                                        : crypto::hash_pair(cur, path.siblings[h]);
            ++res.hash_ops;
            computed.push_back(cur);
        }
        if (cur != target) return res;

        res.ok = true;
        for (unsigned h = 1; h <= len && h < depth; ++h) {
            if (cache.caches_height(h) && !cache.get(h, path.index)) {
                cache.put(h, path.index, computed[h - 1]);
                ++res.nodes_inserted;
            }
        }
        return res;
    }
};

CachedVerifyResult cached_verify(PathCache& cache, const Digest& root, const MerklePath& path) {
    return CachedVerifier::run(cache, root, path);
}

MerklePath truncate_path(const PathCache& cache, const MerklePath& full) {
    MerklePath out = full;
    const auto h = cache.truncation_height(full.index);
    if (h < out.siblings.size()) out.siblings.resize(h);
    return out;
}

}  // namespace argus::merkle
