#include "conenet/geom/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "conenet/geom/distance.hpp"

namespace conenet {

void SimplicialCone::validate() const {
    for (const auto& hs : faces) {
        if (std::fabs(norm(hs.normal) - 1.0) > 1e-12) throw DegeneratePolytope("cone face normal not unit");
        if (std::fabs(hs.margin(apex)) > kGeoTol) throw DegeneratePolytope("cone face plane misses apex");
        if (dot(hs.normal, internal_ray) >= 0.0) throw DegeneratePolytope("internal ray not interior");
    }
    const double det = dot(faces[0].normal, cross(faces[1].normal, faces[2].normal));
    if (std::fabs(det) < kDegenTol) throw DegeneratePolytope("cone face normals dependent");
}

SimplicialCone cone_from_rays(const Vec3& apex, const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    const std::array<Vec3, 3> rays = {normalized(r0), normalized(r1), normalized(r2)};
    SimplicialCone c;
    c.apex = apex;
    for (int l = 0; l < 3; ++l) {
        Vec3 n = normalized(cross(rays[(l + 1) % 3], rays[(l + 2) % 3]));
        if (dot(n, rays[l]) > 0.0) n = -n; // outward: excluded ray on the negative side
        c.faces[l] = {n, dot(n, apex)};
    }
    c.internal_ray = normalized(rays[0] + rays[1] + rays[2]);
    c.validate();
    return c;
}

double ConvexPolytope::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            best = std::max(best, dist(vertices[i], vertices[j]));
    return best;
}

Vec3 ConvexPolytope::lowest_vertex() const {
    if (vertices.empty()) throw DegeneratePolytope("polytope has no vertices");
    Vec3 best = vertices[0];
    for (const auto& v : vertices) {
        if (v.z < best.z || (v.z == best.z && (v.x < best.x || (v.x == best.x && v.y < best.y))))
            best = v;
    }
    return best;
}

Vec3 ConvexPolytope::centroid() const {
    Vec3 c{0, 0, 0};
    for (const auto& v : vertices) c += v;
    return c / double(vertices.size());
}

void ConvexPolytope::finalize() {
    if (vertices.size() < 4 || facets.size() < 4)
        throw DegeneratePolytope("polytope needs at least 4 vertices and 4 facets");
    for (const auto& v : vertices)
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
            throw DegeneratePolytope("non-finite vertex");
    for (auto& hs : facets) {
        const double n = norm(hs.normal);
        if (n < kDegenTol) throw DegeneratePolytope("zero facet normal");
        if (std::fabs(n - 1.0) > 1e-12) { // normalize defensively exact inputs only
            hs.offset /= n;
            hs.normal = hs.normal / n;
        }
    }

    // Incidence from margins: equality on incident facets, strictly inside the rest.
    const double tol = 1e-9;
    vertex_facets.assign(vertices.size(), {});
    facet_vertices.assign(facets.size(), {});
    for (std::size_t vi = 0; vi < vertices.size(); ++vi) {
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
            const double m = facets[fi].margin(vertices[vi]);
            if (m > tol) throw DegeneratePolytope("vertex outside facet halfspace");
            if (m >= -tol) {
                vertex_facets[vi].push_back(int(fi));
                facet_vertices[fi].push_back(int(vi));
            }
        }
        if (vertex_facets[vi].size() < 3) throw DegeneratePolytope("vertex on fewer than 3 facets");
    }
    for (std::size_t fi = 0; fi < facets.size(); ++fi)
        if (facet_vertices[fi].size() < 3) throw DegeneratePolytope("facet with fewer than 3 vertices");

    // Order each facet cycle by angle around its centroid.
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
        auto& cyc = facet_vertices[fi];
        Vec3 c{0, 0, 0};
        for (int vi : cyc) c += vertices[vi];
        c = c / double(cyc.size());
        const Vec3 n = facets[fi].normal;
        Vec3 e1 = vertices[cyc[0]] - c;
        e1 = normalized(e1 - n * dot(e1, n));
        const Vec3 e2 = cross(n, e1);
        std::sort(cyc.begin(), cyc.end(), [&](int a, int b) {
            const Vec3 da = vertices[a] - c, db = vertices[b] - c;
            return std::atan2(dot(da, e2), dot(da, e1)) < std::atan2(dot(db, e2), dot(db, e1));
        });
    }

    // Edges: vertex pairs sharing exactly two facets.
    edges.clear();
    std::set<std::pair<int, int>> seen;
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
        const auto& cyc = facet_vertices[fi];
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
            if (a > b) std::swap(a, b);
            if (!seen.insert({a, b}).second) continue;
            std::vector<int> shared;
            std::set_intersection(vertex_facets[a].begin(), vertex_facets[a].end(),
                                  vertex_facets[b].begin(), vertex_facets[b].end(),
                                  std::back_inserter(shared));
            if (shared.size() != 2) throw DegeneratePolytope("edge not on exactly 2 facets");
            edges.push_back({a, b, shared[0], shared[1]});
        }
    }

    // Boundedness: facet normals must positively span every direction.
    for (const Vec3 d : {Vec3{1, 0, 0}, Vec3{-1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, -1, 0},
                         Vec3{0, 0, 1}, Vec3{0, 0, -1}, Vec3{1, 1, 1}, Vec3{-1, -1, -1},
                         Vec3{1, -1, 1}, Vec3{-1, 1, -1}, Vec3{1, 1, -1}, Vec3{-1, -1, 1}}) {
        bool supported = false;
        for (const auto& hs : facets)
            if (dot(hs.normal, d) > kDegenTol) { supported = true; break; }
        if (!supported) throw DegeneratePolytope("unbounded direction");
    }

    // Mutual containment spot check: facet-polygon samples satisfy the H-rep,
    // and the vertex centroid is strictly interior.
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
        Vec3 c{0, 0, 0};
        for (int vi : facet_vertices[fi]) c += vertices[vi];
        c = c / double(facet_vertices[fi].size());
        if (max_margin({0, 0, 0}, c) > tol) throw DegeneratePolytope("facet sample escapes H-rep");
        if (std::fabs(facets[fi].margin(c)) > tol) throw DegeneratePolytope("facet sample off its plane");
    }
    if (max_margin({0, 0, 0}, centroid()) >= -tol) throw DegeneratePolytope("centroid not interior");
}

double min_feature_separation(const ConvexPolytope& T) {
    double best = 1e300;
    const auto& V = T.vertices;
    // vertex-vertex
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = i + 1; j < V.size(); ++j) best = std::min(best, dist(V[i], V[j]));
    // vertex-edge, non-incident
    for (std::size_t i = 0; i < V.size(); ++i)
        for (const auto& e : T.edges) {
            if (int(i) == e.v0 || int(i) == e.v1) continue;
            best = std::min(best, point_segment_distance(V[i], V[e.v0], V[e.v1]));
        }
    // vertex-facet, non-incident
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t fi = 0; fi < T.facets.size(); ++fi) {
            const auto& inc = T.vertex_facets[i];
            if (std::find(inc.begin(), inc.end(), int(fi)) != inc.end()) continue;
            std::vector<Vec3> poly;
            for (int vi : T.facet_vertices[fi]) poly.push_back(V[vi]);
            best = std::min(best, point_polygon_distance(V[i], poly));
        }
    // edge-edge, non-adjacent
    for (std::size_t a = 0; a < T.edges.size(); ++a)
        for (std::size_t b = a + 1; b < T.edges.size(); ++b) {
            const auto& ea = T.edges[a];
            const auto& eb = T.edges[b];
            if (ea.v0 == eb.v0 || ea.v0 == eb.v1 || ea.v1 == eb.v0 || ea.v1 == eb.v1) continue;
            best = std::min(best, segment_segment_distance(V[ea.v0], V[ea.v1], V[eb.v0], V[eb.v1]));
        }
    if (!(best > kDegenTol)) throw DegeneratePolytope("feature separation below tolerance");
    return best;
}

ConvexPolytope make_box(const Vec3& lo, const Vec3& hi) {
    ConvexPolytope T;
    for (int b = 0; b < 8; ++b)
        T.vertices.push_back({b & 1 ? hi.x : lo.x, b & 2 ? hi.y : lo.y, b & 4 ? hi.z : lo.z});
    T.facets = {
        {{-1, 0, 0}, -lo.x}, {{1, 0, 0}, hi.x},
        {{0, -1, 0}, -lo.y}, {{0, 1, 0}, hi.y},
        {{0, 0, -1}, -lo.z}, {{0, 0, 1}, hi.z},
    };
    T.finalize();
    return T;
}

ConvexPolytope make_tetrahedron(double edge) {
    const double s = edge / (2.0 * std::sqrt(2.0));
    ConvexPolytope T;
    T.vertices = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    // Facet opposite each vertex.
    for (int i = 0; i < 4; ++i) {
        const Vec3 a = T.vertices[(i + 1) % 4], b = T.vertices[(i + 2) % 4], c = T.vertices[(i + 3) % 4];
        Vec3 n = normalized(cross(b - a, c - a));
        if (dot(n, T.vertices[i]) > dot(n, a)) n = -n;
        T.facets.push_back({n, dot(n, a)});
    }
    T.finalize();
    return T;
}

ConvexPolytope polytope_from_halfspaces(std::span<const Halfspace> hs) {
    ConvexPolytope T;
    T.facets.assign(hs.begin(), hs.end());
    const std::size_t f = hs.size();
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = i + 1; j < f; ++j)
            for (std::size_t k = j + 1; k < f; ++k) {
                const Vec3 n0 = hs[i].normal, n1 = hs[j].normal, n2 = hs[k].normal;
                const double det = dot(n0, cross(n1, n2));
                if (std::fabs(det) < 1e-9) continue;
                // Cramer for the plane triple intersection.
                const Vec3 rhs{hs[i].offset, hs[j].offset, hs[k].offset};
                const Vec3 p = (cross(n1, n2) * rhs.x + cross(n2, n0) * rhs.y + cross(n0, n1) * rhs.z) / det;
                bool inside = true;
                for (std::size_t l = 0; l < f && inside; ++l)
                    if (hs[l].margin(p) > 1e-9) inside = false;
                if (!inside) continue;
                bool dup = false;
                for (const auto& v : T.vertices)
                    if (dist(v, p) < 1e-9) { dup = true; break; }
                if (!dup) T.vertices.push_back(p);
            }
    // Drop facets that ended up with no vertices (redundant halfspaces).
    std::vector<Halfspace> kept;
    for (const auto& h : T.facets) {
        int cnt = 0;
        for (const auto& v : T.vertices)
            if (std::fabs(h.margin(v)) <= 1e-9) ++cnt;
        if (cnt >= 3) kept.push_back(h);
    }
    T.facets = std::move(kept);
    T.finalize();
    return T;
}

} // namespace conenet
