#include "argus/merkle/merkle_tree.hpp"

#include <stdexcept>

namespace argus::merkle {

unsigned ceil_log2(std::uint64_t n) {
    unsigned d = 0;
    while ((1ULL << d) < n) ++d;
    return d;
}

Bytes MerklePath::encode() const {
    ByteWriter w;
    w.raw(leaf.bytes).u64(index).u32(static_cast<std::uint32_t>(siblings.size()));
    for (const auto& s : siblings) w.raw(s.bytes);
    return std::move(w).bytes();
}

MerklePath MerklePath::decode(ByteView bytes) {
    ByteReader r(bytes);
    MerklePath p;
    p.leaf = Digest::from_view(r.raw(32));
    p.index = r.u64();
    const auto n = r.u32();
    if (n > 64) throw DecodeError("merkle path too long");
    for (std::uint32_t i = 0; i < n; ++i) p.siblings.push_back(Digest::from_view(r.raw(32)));
    r.expect_done();
    return p;
}

MerkleTree::MerkleTree(std::vector<Digest> leaves) {
    if (leaves.empty()) throw std::invalid_argument("merkle tree needs at least one leaf");
    levels_.push_back(std::move(leaves));
    while (levels_.back().size() > 1) {
        const auto& below = levels_.back();
        std::vector<Digest> up;
        up.reserve((below.size() + 1) / 2);
        for (std::size_t i = 0; i < below.size(); i += 2) {
            const Digest& right = i + 1 < below.size() ? below[i + 1] : below[i];
            up.push_back(crypto::hash_pair(below[i], right));
            ++hash_ops_;
        }
        levels_.push_back(std::move(up));
    }
}

MerklePath MerkleTree::prove(std::uint64_t index) const {
    if (index >= leaf_count()) throw std::out_of_range("merkle leaf index out of range");
    MerklePath p;
    p.leaf = levels_.front()[index];
    p.index = index;
    std::uint64_t idx = index;
    for (std::size_t h = 0; h + 1 < levels_.size(); ++h) {
        const auto& level = levels_[h];
        const std::uint64_t sib = idx ^ 1;
        p.siblings.push_back(sib < level.size() ? level[sib] : level[idx]);
        idx >>= 1;
    }
    return p;
}

Digest fold(const MerklePath& path, std::size_t height) {
    Digest cur = path.leaf;
    for (std::size_t h = 0; h < height; ++h) {
        cur = (path.index >> h & 1) ? crypto::hash_pair(path.siblings[h], cur) : crypto::hash_pair(cur, path.siblings[h]);
    }
    return cur;
}

Digest fold(const MerklePath& path) { return fold(path, path.siblings.size()); }

bool verify(const Digest& root, const MerklePath& path) {
    if (path.siblings.size() < 64 && (path.index >> path.siblings.size()) != 0) return false;
    return fold(path) == root;
}

}  // namespace argus::merkle
