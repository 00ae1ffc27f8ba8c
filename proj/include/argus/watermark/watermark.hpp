#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "argus/bytes.hpp"
#include "argus/rng.hpp"

namespace argus::watermark {

/// Toy splice-in watermark: each segment reserves a fixed mark region at its
/// start. No robustness or imperceptibility is modelled.
inline constexpr std::size_t kMarkRegion = 48;
inline constexpr std::size_t kSegmentMark = 16;
inline constexpr std::size_t kMaxIdBytes = 32;

using WatermarkId = Bytes;

class DetectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Asset {
    Bytes payload;
    std::uint32_t segments = 1;

    /// Throws std::invalid_argument when the payload cannot hold one mark
    /// region per segment.
    void validate() const;
    std::size_t segment_offset(std::uint32_t s) const;
};

/// Writes `id` (1..32 bytes) into every mark region.
Bytes embed(const Asset& asset, const WatermarkId& id);

/// Whole-copy marks yield the embedded id; segment-assembled copies yield
/// the version id derived from the marks found, truncated to id_bytes.
/// Throws DetectionError.
WatermarkId detect(ByteView copy, std::uint32_t segments, std::size_t id_bytes = 16);

/// Bit pattern of a segment-assembled copy (segment 1 is the most
/// significant bit). Throws DetectionError.
std::uint64_t detect_version(ByteView copy, std::uint32_t segments);

/// 2^L versions from 2L segment embeddings: each segment is marked once
/// per bit value, and version j picks segment s's variant by bit s of j.
class VersionFamily {
public:
    std::uint32_t segments() const { return asset_.segments; }
    std::uint64_t size() const { return 1ULL << asset_.segments; }
    std::uint64_t embed_calls() const { return embed_calls_; }

    /// Throws std::out_of_range when j >= size().
    Bytes assemble(std::uint64_t j) const;
    /// truncate(H(selected marks), id_bytes): the id a detector recovers.
    WatermarkId version_id(std::uint64_t j) const;

private:
    friend VersionFamily segment_generate(const Asset&, std::uint32_t, Rng&, std::size_t);

    Asset asset_;
    std::size_t id_bytes_ = 16;
    std::vector<std::array<Bytes, 2>> variants_;  // full segment bytes
    std::vector<std::array<Bytes, 2>> marks_;
    std::uint64_t embed_calls_ = 0;
};

/// Throws std::invalid_argument unless 1 <= l_seg <= 20, the asset fits,
/// and 1 <= id_bytes <= 32.
VersionFamily segment_generate(const Asset& asset, std::uint32_t l_seg, Rng& rng, std::size_t id_bytes = 16);

/// Segments needed to cover n versions: ceil(log2 n), at least 1.
std::uint32_t segments_for(std::uint64_t n);

}  // namespace argus::watermark
