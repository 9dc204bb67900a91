#pragma once

#include <span>
#include <vector>

#include "conenet/geom/polytope.hpp"

namespace conenet {

// The range shape: a union of convex pieces (a single piece for convex T).
struct PolytopeFamily {
    std::vector<ConvexPolytope> pieces;

    bool contains(const Vec3& translate, const Vec3& p, bool closed) const {
        for (const auto& piece : pieces)
            if (conenet::contains(piece, translate, p, closed)) return true;
        return false;
    }
    Box3 bbox() const {
        Box3 b;
        for (const auto& piece : pieces)
            for (const auto& v : piece.vertices) b.expand(v);
        return b;
    }
    double diameter() const { return bbox().diameter(); }
    Vec3 lowest_vertex() const {
        Vec3 best{0, 0, 0};
        bool first = true;
        for (const auto& piece : pieces) {
            const Vec3 v = piece.lowest_vertex();
            if (first || v.z < best.z || (v.z == best.z && (v.x < best.x || (v.x == best.x && v.y < best.y)))) {
                best = v;
                first = false;
            }
        }
        if (first) throw DegeneratePolytope("family has no pieces");
        return best;
    }
};

} // namespace conenet
