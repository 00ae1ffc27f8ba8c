#include <gtest/gtest.h>

#include <set>

#include "argus/rng.hpp"
#include "argus/watermark/watermark.hpp"

using namespace argus;
using namespace argus::watermark;

namespace {

Asset make_asset(std::uint32_t segments, std::size_t bytes, std::uint64_t seed) {
    Rng rng(seed);
    return Asset{rng.bytes(bytes), segments};
}

}  // namespace

TEST(Watermark, EmbedDetectRoundTrip) {
    const auto asset = make_asset(3, 600, 1);
    const WatermarkId id = from_hex("0102030405060708090a0b0c0d0e0f10");
    const auto copy = embed(asset, id);
    EXPECT_EQ(copy.size(), asset.payload.size());
    EXPECT_EQ(detect(copy, 3), id);
}

TEST(Watermark, UnmarkedCopyNotDetected) {
    const auto asset = make_asset(2, 400, 2);
    EXPECT_THROW(detect(asset.payload, 2), DetectionError);
    EXPECT_THROW(detect(Bytes(10, 0), 2), DetectionError);
}

TEST(Watermark, AssetValidation) {
    EXPECT_THROW(make_asset(4, 100, 3).validate(), std::invalid_argument);
    EXPECT_THROW(embed(make_asset(1, 100, 3), Bytes{}), std::invalid_argument);
    EXPECT_THROW(embed(make_asset(1, 100, 3), Bytes(33, 1)), std::invalid_argument);
}

TEST(VersionFamily, TwoToTheLVersionsFromTwoLEmbeds) {
    const auto asset = make_asset(5, 5 * 96, 4);
    Rng rng(9);
    const auto fam = segment_generate(asset, 5, rng);
    EXPECT_EQ(fam.size(), 32u);
    EXPECT_EQ(fam.embed_calls(), 10u);
    std::set<Bytes> ids;
    for (std::uint64_t j = 0; j < fam.size(); ++j) {
        const auto copy = fam.assemble(j);
        EXPECT_EQ(detect_version(copy, 5), j);
        EXPECT_EQ(detect(copy, 5), fam.version_id(j));
        ids.insert(fam.version_id(j));
    }
    EXPECT_EQ(ids.size(), 32u);
    EXPECT_THROW((void)fam.assemble(32), std::out_of_range);
}

TEST(VersionFamily, IdWidthFollowsLambda) {
    const auto asset = make_asset(2, 200, 5);
    Rng rng(1);
    const auto fam = segment_generate(asset, 2, rng, 32);
    EXPECT_EQ(fam.version_id(3).size(), 32u);
    EXPECT_EQ(detect(fam.assemble(3), 2, 32), fam.version_id(3));
}

TEST(VersionFamily, FamiliesAreIndependent) {
    const auto asset = make_asset(3, 300, 6);
    Rng a(1), b(2);
    const auto fa = segment_generate(asset, 3, a), fb = segment_generate(asset, 3, b);
    for (std::uint64_t j = 0; j < 8; ++j) EXPECT_NE(fa.version_id(j), fb.version_id(j));
}

TEST(VersionFamily, SegmentsFor) {
    EXPECT_EQ(segments_for(1), 1u);
    EXPECT_EQ(segments_for(2), 1u);
    EXPECT_EQ(segments_for(16), 4u);
    EXPECT_EQ(segments_for(17), 5u);
    EXPECT_EQ(segments_for(10000), 14u);
}
