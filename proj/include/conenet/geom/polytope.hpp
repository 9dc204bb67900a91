#pragma once

#include <span>
#include <vector>

#include "conenet/geom/shapes.hpp"

namespace conenet {

// Bounded convex polytope carrying both representations plus incidence.
// H-rep is authoritative for membership, V-rep for feature separation.
struct ConvexPolytope {
    std::vector<Vec3> vertices;
    std::vector<Halfspace> facets;
    std::vector<std::vector<int>> vertex_facets; // per vertex, incident facet ids
    std::vector<std::vector<int>> facet_vertices; // per facet, incident vertex ids (cyclic order)

    struct EdgeRef {
        int v0, v1; // vertex ids
        int f0, f1; // the two incident facets
    };
    std::vector<EdgeRef> edges;

    // Fills incidence, orders facet cycles, derives edges, checks invariants.
    // Throws DegeneratePolytope on violations.
    void finalize();

    double max_margin(const Vec3& translate, const Vec3& p) const {
        double m = -1e300;
        for (const auto& hs : facets) m = std::max(m, halfspace_margin(hs, translate, p));
        return m;
    }

    std::vector<simd::AffineForm> forms_at(const Vec3& translate) const {
        std::vector<simd::AffineForm> f(facets.size());
        for (std::size_t i = 0; i < facets.size(); ++i)
            f[i] = {facets[i].normal, facets[i].offset + dot(facets[i].normal, translate)};
        return f;
    }

    Box3 bbox() const {
        Box3 b;
        for (const auto& v : vertices) b.expand(v);
        return b;
    }
    double diameter() const;

    // Lowest vertex of the untranslated polytope: min z, ties by (x, y).
    Vec3 lowest_vertex() const;
    Vec3 centroid() const;
};

inline bool contains(const ConvexPolytope& T, const Vec3& translate, const Vec3& p, bool closed) {
    const Side s = classify_margin(T.max_margin(translate, p));
    return closed ? s != Side::Outside : s == Side::Inside;
}

// Minimum distance between non-incident feature pairs (vertex/vertex,
// vertex/edge, vertex/facet, nonadjacent edge/edge). Throws
// DegeneratePolytope when the minimum collapses below kDegenTol.
double min_feature_separation(const ConvexPolytope& T);

// Convenience constructors.
ConvexPolytope make_box(const Vec3& lo, const Vec3& hi);
ConvexPolytope make_tetrahedron(double edge);
// Polytope bounded by the given outward facet planes; vertices recovered from
// plane triples. Throws DegeneratePolytope if unbounded or degenerate.
ConvexPolytope polytope_from_halfspaces(std::span<const Halfspace> hs);

} // namespace conenet
