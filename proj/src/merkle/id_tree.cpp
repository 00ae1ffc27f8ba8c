#include "argus/merkle/id_tree.hpp"

#include <stdexcept>
#include <unordered_set>

namespace argus::merkle {

std::uint64_t IdTreeShape::global_index(std::uint32_t x, std::uint32_t y, std::uint32_t t) const {
    if (x < 1 || x > m || y < 1 || y > n || t < 1 || t > k) throw std::out_of_range("id tree position out of range");
    return ((static_cast<std::uint64_t>(x - 1) << depth_n() | (y - 1)) << depth_k()) | (t - 1);
}

Digest id_hash(ByteView id) {
    crypto::Hasher h;
    return h.var(id).finish();
}

Digest id_reveal(ByteView id, std::uint32_t t) {
    crypto::Hasher h;
    return h.var(id).u32(t).finish();
}

Digest id_leaf_from_reveal(const Digest& rv1, std::uint32_t x, std::uint32_t y) {
    crypto::Hasher h;
    return h.digest(rv1).u32(x).u32(y).finish();
}

Digest id_leaf(ByteView id, std::uint32_t x, std::uint32_t y, std::uint32_t t) {
    return id_leaf_from_reveal(id_reveal(id, t), x, y);
}

namespace {

MerkleTree version_tree(ByteView id, std::uint32_t x, std::uint32_t y, std::uint32_t k) {
    std::vector<Digest> leaves;
    leaves.reserve(k);
    for (std::uint32_t t = 1; t <= k; ++t) leaves.push_back(id_leaf(id, x, y, t));
    return MerkleTree(std::move(leaves));
}

}  // namespace

Digest version_root(ByteView id, std::uint32_t x, std::uint32_t y, std::uint32_t k) {
    return version_tree(id, x, y, k).root();
}

MerklePath version_path(ByteView id, std::uint32_t x, std::uint32_t y, std::uint32_t t, std::uint32_t k) {
    if (t < 1 || t > k) throw std::out_of_range("period outside the tree");
    return version_tree(id, x, y, k).prove(t - 1);
}

OwnerIdStore::OwnerIdStore(IdTreeShape shape, std::vector<std::vector<Digest>> id_hashes,
                           std::vector<std::vector<Digest>> layer2)
    : shape_(shape), id_hashes_(std::move(id_hashes)), layer2_(std::move(layer2)) {
    if (id_hashes_.size() != shape_.m || layer2_.size() != shape_.m) throw ConfigError("owner store: licensee count mismatch");
    for (std::uint32_t x = 0; x < shape_.m; ++x) {
        if (id_hashes_[x].size() != shape_.n || layer2_[x].size() != shape_.n) {
            throw ConfigError("owner store: version count mismatch");
        }
        for (std::uint32_t y = 0; y < shape_.n; ++y) id_map_.emplace(id_hashes_[x][y], std::make_pair(x + 1, y + 1));
        layer2_trees_.emplace_back(layer2_[x]);
        layer1_.push_back(layer2_trees_.back().root());
    }
    layer1_tree_.emplace(layer1_);
    root_ = layer1_tree_->root();
}

std::size_t OwnerIdStore::persistent_bytes(std::uint32_t x) const {
    const auto& ids = id_hashes_.at(x - 1);
    const auto& l2 = layer2_.at(x - 1);
    return (ids.size() + l2.size()) * Digest::kSize;
}

std::size_t OwnerIdStore::persistent_bytes() const {
    std::size_t total = 0;
    for (std::uint32_t x = 1; x <= shape_.m; ++x) total += persistent_bytes(x);
    return total;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> OwnerIdStore::lookup(const Digest& h) const {
    auto it = id_map_.find(h);
    if (it == id_map_.end()) return std::nullopt;
    return it->second;
}

const Digest& OwnerIdStore::layer2(std::uint32_t x, std::uint32_t y) const { return layer2_.at(x - 1).at(y - 1); }

MerklePath OwnerIdStore::query(std::uint32_t x, std::uint32_t y, std::uint32_t t, ByteView id) const {
    auto hit = lookup(id_hash(id));
    if (!hit || hit->first != x || hit->second != y) throw NotFoundError("id hash does not map to the requested copy");
    MerklePath path = version_path(id, x, y, t, shape_.k);
    if (fold(path) != layer2(x, y)) throw NotFoundError("id does not reproduce the stored version root");
    auto mid = layer2_trees_[x - 1].prove(y - 1);
    auto top = layer1_tree_->prove(x - 1);
    path.siblings.insert(path.siblings.end(), mid.siblings.begin(), mid.siblings.end());
    path.siblings.insert(path.siblings.end(), top.siblings.begin(), top.siblings.end());
    path.index = shape_.global_index(x, y, t);
    return path;
}

OwnerIdStore id_tree_build(const std::vector<std::vector<Bytes>>& ids, std::uint32_t k) {
    if (ids.empty() || ids.front().empty() || k == 0) throw ConfigError("id tree: M, N and K must be positive");
    IdTreeShape shape{static_cast<std::uint32_t>(ids.size()), static_cast<std::uint32_t>(ids.front().size()), k};
    std::unordered_set<Digest> seen;
    std::vector<std::vector<Digest>> hashes(shape.m), layer2(shape.m);
    for (std::uint32_t x = 1; x <= shape.m; ++x) {
        const auto& row = ids[x - 1];
        if (row.size() != shape.n) throw ConfigError("id tree: ragged id matrix");
        for (std::uint32_t y = 1; y <= shape.n; ++y) {
            const auto h = id_hash(row[y - 1]);
            if (!seen.insert(h).second) throw ConfigError("id tree: duplicate id");
            hashes[x - 1].push_back(h);
            layer2[x - 1].push_back(version_root(row[y - 1], x, y, k));
        }
    }
    return OwnerIdStore(shape, std::move(hashes), std::move(layer2));
}

}  // namespace argus::merkle
