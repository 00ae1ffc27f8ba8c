#include "argus/contract/calls.hpp"

namespace argus::contract {

Bytes StoreCall::encode() const {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(kind));
    switch (kind) {
        case StoreKind::PBatch:
            w.u32(static_cast<std::uint32_t>(points.size()));
            for (const auto& p : points) w.var(p.encoding);
            break;
        case StoreKind::Cm:
            w.raw(digest.bytes).u32(x).u32(y);
            break;
        case StoreKind::Rt:
        case StoreKind::PRoot:
            w.raw(digest.bytes);
            break;
    }
    return std::move(w).bytes();
}

StoreCall StoreCall::decode(const crypto::Group& g, ByteView bytes) {
    ByteReader rd(bytes);
    StoreCall c;
    const auto k = rd.u8();
    if (k < 1 || k > 4) throw DecodeError("unknown store kind");
    c.kind = static_cast<StoreKind>(k);
    switch (c.kind) {
        case StoreKind::PBatch: {
            const auto n = rd.u32();
            if (n > rd.remaining() / 4) throw DecodeError("point count exceeds message");
            for (std::uint32_t i = 0; i < n; ++i) c.points.push_back(g.decode_point(rd.var()));
            break;
        }
        case StoreKind::Cm:
            c.digest = Digest::from_view(rd.raw(32));
            c.x = rd.u32();
            c.y = rd.u32();
            break;
        case StoreKind::Rt:
        case StoreKind::PRoot:
            c.digest = Digest::from_view(rd.raw(32));
            break;
    }
    rd.expect_done();
    return c;
}

Bytes ReportCall::encode() const {
    ByteWriter w;
    w.raw(rv1.bytes).var(path.encode()).str(informer);
    return std::move(w).bytes();
}

ReportCall ReportCall::decode(ByteView bytes) {
    ByteReader rd(bytes);
    ReportCall c;
    c.rv1 = Digest::from_view(rd.raw(32));
    c.path = merkle::MerklePath::decode(rd.var());
    c.informer = rd.str();
    rd.expect_done();
    return c;
}

Bytes AppealCall::encode(const crypto::Group& g) const {
    ByteWriter w;
    w.u32(x).var(sub.encode(g)).u8(p_proof ? 1 : 0);
    if (p_proof) w.var(p_proof->point.encoding).var(p_proof->path.encode());
    return std::move(w).bytes();
}

AppealCall AppealCall::decode(const crypto::Group& g, ByteView bytes) {
    ByteReader rd(bytes);
    AppealCall c;
    c.x = rd.u32();
    c.sub = ot::AppealSubmission::decode(g, rd.var());
    const auto has_proof = rd.u8();
    if (has_proof > 1) throw DecodeError("bad proof flag");
    if (has_proof) {
        PointProof pp;
        pp.point = g.decode_point(rd.var());
        pp.path = merkle::MerklePath::decode(rd.var());
        c.p_proof = std::move(pp);
    }
    rd.expect_done();
    return c;
}

Bytes BaselineAppealCall::encode(const crypto::Group& g) const {
    ByteWriter w;
    w.u32(x).var(appeal.encode(g));
    return std::move(w).bytes();
}

BaselineAppealCall BaselineAppealCall::decode(const crypto::Group& g, ByteView bytes) {
    ByteReader rd(bytes);
    BaselineAppealCall c;
    c.x = rd.u32();
    c.appeal = ot::BaselineAppeal::decode(g, rd.var());
    rd.expect_done();
    return c;
}

Bytes AllocateCall::encode() const {
    ByteWriter w;
    w.u32(x).str(informer);
    return std::move(w).bytes();
}

AllocateCall AllocateCall::decode(ByteView bytes) {
    ByteReader rd(bytes);
    AllocateCall c;
    c.x = rd.u32();
    c.informer = rd.str();
    rd.expect_done();
    return c;
}

Bytes LicenseeCall::encode() const {
    ByteWriter w;
    w.u32(x);
    return std::move(w).bytes();
}

LicenseeCall LicenseeCall::decode(ByteView bytes) {
    ByteReader rd(bytes);
    LicenseeCall c;
    c.x = rd.u32();
    rd.expect_done();
    return c;
}

Digest p_leaf(const GroupPoint& p) {
    crypto::Hasher h;
    return h.var(as_bytes("argus/plist")).var(p.encoding).finish();
}

}  // namespace argus::contract
