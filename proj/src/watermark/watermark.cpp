#include "argus/watermark/watermark.hpp"

#include <algorithm>
#include <cstring>

#include "argus/crypto/hash.hpp"

namespace argus::watermark {

namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'A', 'R', 'G', 'U', 'S', 'W', 'M', '1'};
constexpr std::uint8_t kKindCopy = 1;
constexpr std::uint8_t kKindSegment = 2;

struct Region {
    std::uint8_t kind = 0;
    Bytes id;                 // kind 1
    std::uint32_t index = 0;  // kind 2
    std::uint8_t bit = 0;
    Bytes mark;
};

void write_region(std::uint8_t* dst, const Region& r) {
    ByteWriter w;
    w.raw(kMagic).u8(r.kind);
    if (r.kind == kKindCopy) {
        w.u8(static_cast<std::uint8_t>(r.id.size())).raw(r.id);
    } else {
        w.u32(r.index).u8(r.bit).raw(r.mark);
    }
    std::memset(dst, 0, kMarkRegion);
    std::memcpy(dst, w.bytes().data(), w.size());
}

Region read_region(ByteView region) {
    if (region.size() < kMarkRegion || !std::equal(kMagic.begin(), kMagic.end(), region.begin())) {
        throw DetectionError("no watermark found");
    }
    ByteReader rd(region.subspan(kMagic.size(), kMarkRegion - kMagic.size()));
    Region r;
    r.kind = rd.u8();
    if (r.kind == kKindCopy) {
        const auto n = rd.u8();
        if (n == 0 || n > kMaxIdBytes) throw DetectionError("corrupt watermark id length");
        auto b = rd.raw(n);
        r.id.assign(b.begin(), b.end());
    } else if (r.kind == kKindSegment) {
        r.index = rd.u32();
        r.bit = rd.u8();
        if (r.bit > 1) throw DetectionError("corrupt segment bit");
        auto b = rd.raw(kSegmentMark);
        r.mark.assign(b.begin(), b.end());
    } else {
        throw DetectionError("unknown watermark kind");
    }
    return r;
}

std::vector<Region> read_all(ByteView copy, std::uint32_t segments) {
    std::vector<Region> out;
    if (segments == 0 || copy.size() < static_cast<std::size_t>(segments) * kMarkRegion) {
        throw DetectionError("copy too small for its segment layout");
    }
    const std::size_t seg_len = copy.size() / segments;
    for (std::uint32_t s = 0; s < segments; ++s) out.push_back(read_region(copy.subspan(s * seg_len, kMarkRegion)));
    return out;
}

WatermarkId id_from_marks(const std::vector<const Bytes*>& marks, std::size_t id_bytes) {
    crypto::Hasher h;
    h.var(as_bytes("argus/watermark/version"));
    for (const auto* m : marks) h.var(*m);
    const auto d = h.finish();
    return WatermarkId(d.bytes.begin(), d.bytes.begin() + static_cast<std::ptrdiff_t>(id_bytes));
}

}  // namespace

void Asset::validate() const {
    if (segments == 0) throw std::invalid_argument("asset needs at least one segment");
    if (payload.size() / segments < kMarkRegion) throw std::invalid_argument("asset payload too small for its mark regions");
}

std::size_t Asset::segment_offset(std::uint32_t s) const { return (payload.size() / segments) * s; }

Bytes embed(const Asset& asset, const WatermarkId& id) {
    asset.validate();
    if (id.empty() || id.size() > kMaxIdBytes) throw std::invalid_argument("watermark id must be 1..32 bytes");
    Bytes out = asset.payload;
    Region r;
    r.kind = kKindCopy;
    r.id = id;
    for (std::uint32_t s = 0; s < asset.segments; ++s) write_region(out.data() + asset.segment_offset(s), r);
    return out;
}

WatermarkId detect(ByteView copy, std::uint32_t segments, std::size_t id_bytes) {
    const auto regions = read_all(copy, segments);
    if (regions.front().kind == kKindCopy) {
        for (const auto& r : regions) {
            if (r.kind != kKindCopy || r.id != regions.front().id) throw DetectionError("inconsistent copy marks");
        }
        return regions.front().id;
    }
    std::vector<const Bytes*> marks;
    for (std::uint32_t s = 0; s < segments; ++s) {
        if (regions[s].kind != kKindSegment || regions[s].index != s) throw DetectionError("inconsistent segment marks");
        marks.push_back(&regions[s].mark);
    }
    return id_from_marks(marks, std::clamp<std::size_t>(id_bytes, 1, kMaxIdBytes));
}

std::uint64_t detect_version(ByteView copy, std::uint32_t segments) {
    const auto regions = read_all(copy, segments);
    std::uint64_t j = 0;
    for (std::uint32_t s = 0; s < segments; ++s) {
        if (regions[s].kind != kKindSegment || regions[s].index != s) throw DetectionError("not a segment-assembled copy");
        j = (j << 1) | regions[s].bit;
    }
    return j;
}

std::uint32_t segments_for(std::uint64_t n) {
    std::uint32_t l = 1;
    while ((1ULL << l) < n) ++l;
    return l;
}

VersionFamily segment_generate(const Asset& asset, std::uint32_t l_seg, Rng& rng, std::size_t id_bytes) {
    if (l_seg < 1 || l_seg > 20) throw std::invalid_argument("segment count must be in [1, 20]");
    if (id_bytes < 1 || id_bytes > kMaxIdBytes) throw std::invalid_argument("id width must be 1..32 bytes");
    VersionFamily fam;
    fam.asset_ = Asset{asset.payload, l_seg};
    fam.asset_.validate();
    fam.id_bytes_ = id_bytes;
    const std::size_t seg_len = fam.asset_.payload.size() / l_seg;
    for (std::uint32_t s = 0; s < l_seg; ++s) {
        const std::size_t begin = seg_len * s;
        const std::size_t end = s + 1 == l_seg ? fam.asset_.payload.size() : begin + seg_len;
        std::array<Bytes, 2> seg, mark;
        for (std::uint8_t b = 0; b < 2; ++b) {
            Region r;
            r.kind = kKindSegment;
            r.index = s;
            r.bit = b;
            r.mark = rng.bytes(kSegmentMark);
            seg[b].assign(fam.asset_.payload.begin() + static_cast<std::ptrdiff_t>(begin),
                          fam.asset_.payload.begin() + static_cast<std::ptrdiff_t>(end));
            write_region(seg[b].data(), r);
            mark[b] = r.mark;
            ++fam.embed_calls_;
        }
        fam.variants_.push_back(std::move(seg));
        fam.marks_.push_back(std::move(mark));
    }
    return fam;
}

Bytes VersionFamily::assemble(std::uint64_t j) const {
    if (j >= size()) throw std::out_of_range("version index out of range");
    Bytes out;
    out.reserve(asset_.payload.size());
    const auto l = asset_.segments;
    for (std::uint32_t s = 0; s < l; ++s) {
        const auto& v = variants_[s][(j >> (l - 1 - s)) & 1];
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

WatermarkId VersionFamily::version_id(std::uint64_t j) const {
    if (j >= size()) throw std::out_of_range("version index out of range");
    std::vector<const Bytes*> marks;
    const auto l = asset_.segments;
    for (std::uint32_t s = 0; s < l; ++s) marks.push_back(&marks_[s][(j >> (l - 1 - s)) & 1]);
    return id_from_marks(marks, id_bytes_);
}

}  // namespace argus::watermark
