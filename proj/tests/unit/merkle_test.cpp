#include <gtest/gtest.h>

#include "argus/rng.hpp"
#include "argus/merkle/id_tree.hpp"
#include "argus/merkle/merkle_tree.hpp"
#include "argus/merkle/path_cache.hpp"

using namespace argus;
using namespace argus::merkle;
using crypto::Digest;

namespace {

std::vector<Digest> leaves(std::size_t n) {
    std::vector<Digest> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(crypto::Hasher().u64(i).finish());
    return out;
}

// Reference root: recursive, pads odd levels by duplicating the last node.
Digest ref_root(std::vector<Digest> level) {
    while (level.size() > 1) {
        if (level.size() % 2 == 1) level.push_back(level.back());
        std::vector<Digest> up;
        for (std::size_t i = 0; i < level.size(); i += 2) up.push_back(crypto::hash_pair(level[i], level[i + 1]));
        level = std::move(up);
    }
    return level.front();
}

std::vector<std::vector<Bytes>> random_ids(std::uint32_t m, std::uint32_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<Bytes>> ids(m);
    for (auto& row : ids) {
        for (std::uint32_t y = 0; y < n; ++y) row.push_back(rng.bytes(16));
    }
    return ids;
}

}  // namespace

TEST(MerkleTree, ProofsForEverySize) {
    for (std::size_t n = 1; n <= 33; ++n) {
        const auto ls = leaves(n);
        MerkleTree t(ls);
        EXPECT_EQ(t.root(), ref_root(ls)) << n;
        EXPECT_EQ(t.depth(), ceil_log2(n));
        for (std::size_t i = 0; i < n; ++i) {
            const auto p = t.prove(i);
            EXPECT_TRUE(verify(t.root(), p)) << n << ' ' << i;
        }
        EXPECT_THROW((void)t.prove(n), std::out_of_range);
    }
    EXPECT_THROW(MerkleTree({}), std::invalid_argument);
}

TEST(MerkleTree, TamperedProofsFail) {
    MerkleTree t(leaves(13));
    auto p = t.prove(6);
    auto bad = p;
    bad.siblings[1].bytes[0] ^= 1;
    EXPECT_FALSE(verify(t.root(), bad));
    bad = p;
    bad.index ^= 1;
    EXPECT_FALSE(verify(t.root(), bad));
    bad = p;
    bad.leaf.bytes[31] ^= 0x80;
    EXPECT_FALSE(verify(t.root(), bad));
}

TEST(MerkleTree, PathEncoding) {
    MerkleTree t(leaves(9));
    const auto p = t.prove(8);
    const auto q = MerklePath::decode(p.encode());
    EXPECT_EQ(q.leaf, p.leaf);
    EXPECT_EQ(q.index, p.index);
    EXPECT_EQ(q.siblings, p.siblings);
    auto enc = p.encode();
    enc.pop_back();
    EXPECT_THROW(MerklePath::decode(enc), DecodeError);
}

TEST(MerkleTree, CeilLog2) {
    EXPECT_EQ(ceil_log2(0), 0u);
    EXPECT_EQ(ceil_log2(1), 0u);
    EXPECT_EQ(ceil_log2(2), 1u);
    EXPECT_EQ(ceil_log2(3), 2u);
    EXPECT_EQ(ceil_log2(1024), 10u);
    EXPECT_EQ(ceil_log2(1025), 11u);
}

TEST(PathCache, HeapIndex) {
    EXPECT_EQ(PathCache::heap_index(3, 3, 5), 1u);
    EXPECT_EQ(PathCache::heap_index(3, 0, 5), 13u);
    EXPECT_EQ(PathCache::heap_index(3, 1, 5), 6u);
}

TEST(PathCache, TruncatedPathsVerifyAndSaveWork) {
    MerkleTree t(leaves(64));
    PathCache cache(t.depth());
    const auto first = cached_verify(cache, t.root(), t.prove(10));
    ASSERT_TRUE(first.ok);
    EXPECT_EQ(first.hash_ops, 6u);
    EXPECT_GT(cache.size(), 0u);

    const auto sib = truncate_path(cache, t.prove(11));
    EXPECT_EQ(sib.siblings.size(), 1u);  // parent of 10 and 11 is cached
    const auto second = cached_verify(cache, t.root(), sib);
    EXPECT_TRUE(second.ok);
    EXPECT_EQ(second.hash_ops, 1u);

    // A truncated path ending at an uncached node is refused.
    auto far = t.prove(50);
    far.siblings.resize(2);
    const auto bad = cached_verify(cache, t.root(), far);
    EXPECT_FALSE(bad.ok);
    EXPECT_TRUE(bad.needs_full_path);
}

TEST(PathCache, ForgedTruncatedPathFails) {
    MerkleTree t(leaves(16));
    PathCache cache(t.depth());
    ASSERT_TRUE(cached_verify(cache, t.root(), t.prove(3)).ok);
    auto p = truncate_path(cache, t.prove(2));
    p.leaf.bytes[0] ^= 1;
    EXPECT_FALSE(cached_verify(cache, t.root(), p).ok);
}

TEST(PathCache, CheckpointsOnly) {
    MerkleTree t(leaves(64));
    PathCache cache(t.depth(), {2, 4});
    EXPECT_TRUE(cache.caches_height(2));
    EXPECT_FALSE(cache.caches_height(3));
    ASSERT_TRUE(cached_verify(cache, t.root(), t.prove(0)).ok);
    EXPECT_EQ(cache.size(), 2u);
    EXPECT_EQ(cache.truncation_height(3), 2u);
    EXPECT_EQ(cache.truncation_height(8), 4u);
    EXPECT_EQ(cache.truncation_height(40), 6u);
}

TEST(IdTree, ShapeAndGlobalIndex) {
    IdTreeShape s{3, 5, 6};
    EXPECT_EQ(s.depth_k(), 3u);
    EXPECT_EQ(s.depth_n(), 3u);
    EXPECT_EQ(s.depth_m(), 2u);
    EXPECT_EQ(s.global_index(1, 1, 1), 0u);
    EXPECT_EQ(s.global_index(2, 3, 4), ((1u << 3 | 2u) << 3) | 3u);
}

TEST(IdTree, QueriedPathsVerify) {
    const auto ids = random_ids(3, 5, 1);
    const auto store = id_tree_build(ids, 6);
    for (std::uint32_t x = 1; x <= 3; ++x) {
        for (std::uint32_t y = 1; y <= 5; ++y) {
            for (std::uint32_t t = 1; t <= 6; ++t) {
                const auto p = store.query(x, y, t, ids[x - 1][y - 1]);
                EXPECT_EQ(p.leaf, id_leaf(ids[x - 1][y - 1], x, y, t));
                EXPECT_EQ(p.index, store.shape().global_index(x, y, t));
                EXPECT_TRUE(verify(store.root(), p));
            }
        }
    }
}

TEST(IdTree, LeafComposition) {
    const Bytes id = {1, 2, 3};
    const auto rv1 = id_reveal(id, 4);
    EXPECT_EQ(rv1, crypto::Hasher().var(id).u32(4).finish());
    EXPECT_EQ(id_leaf(id, 2, 3, 4), crypto::Hasher().digest(rv1).u32(2).u32(3).finish());
}

TEST(IdTree, LookupAndRejections) {
    const auto ids = random_ids(2, 4, 2);
    const auto store = id_tree_build(ids, 3);
    const auto pos = store.lookup(id_hash(ids[1][2]));
    ASSERT_TRUE(pos.has_value());
    EXPECT_EQ(*pos, std::make_pair(2u, 3u));
    EXPECT_FALSE(store.lookup(id_hash(Bytes(16, 0))).has_value());
    EXPECT_THROW(store.query(2, 2, 1, ids[1][2]), NotFoundError);
    EXPECT_THROW(store.query(1, 1, 1, Bytes(16, 0)), NotFoundError);

    auto dup = ids;
    dup[1][0] = dup[0][0];
    EXPECT_THROW(id_tree_build(dup, 3), ConfigError);
    auto ragged = ids;
    ragged[1].pop_back();
    EXPECT_THROW(id_tree_build(ragged, 3), ConfigError);
}

TEST(IdTree, OwnerStorageIndependentOfK) {
    const auto ids = random_ids(1, 100, 3);
    const auto a = id_tree_build(ids, 10);
    const auto b = id_tree_build(ids, 100);
    EXPECT_EQ(a.persistent_bytes(1), 64u * 100);
    EXPECT_EQ(b.persistent_bytes(1), a.persistent_bytes(1));
    EXPECT_NE(a.root(), b.root());
}
