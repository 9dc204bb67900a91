#include "conenet/harness/verify.hpp"

namespace conenet {

OracleResult verify_net_threshold(const CanonicalTranslates& ct, int m, const SubsetMask& net) {
    OracleResult res;
    for (const auto& r : ct.realized()) {
        if (r.members.count() < m) continue;
        if (r.members.intersects(net)) continue;
        const Vec3 off = ct.realize_offset(r);
        const SubsetMask recount = ct.closed_mask_at(off);
        if (recount.count() < m || recount.intersects(net)) continue; // not a genuine violator
        res.ok = false;
        res.offset = off;
        res.count = recount.count();
        return res;
    }
    return res;
}

OracleResult verify_net(std::span<const Vec3> P, const PolytopeFamily& F, double eps,
                        std::span<const int> net) {
    SubsetMask net_mask;
    for (int i : net) net_mask.set(i);
    const int threshold = std::max(1, int(std::ceil(eps * double(P.size()) - 1e-12)));
    for (std::size_t pi = 0; pi < F.pieces.size(); ++pi) {
        const CanonicalTranslates ct(CanonicalShape::from_polytope(F.pieces[pi]), P);
        OracleResult res = verify_net_threshold(ct, threshold, net_mask);
        if (!res.ok) {
            res.piece = int(pi);
            return res;
        }
    }
    return {};
}

} // namespace conenet
