#include "conenet/planar/ddelaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace conenet {

bool segments_cross(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
    const double eps = 1e-12;
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return cross(q - p, r - p);
    };
    const double shared = 1e-9;
    if (dist(a0, b0) < shared || dist(a0, b1) < shared || dist(a1, b0) < shared ||
        dist(a1, b1) < shared)
        return false;
    const double d1 = orient(b0, b1, a0), d2 = orient(b0, b1, a1);
    const double d3 = orient(a0, a1, b0), d4 = orient(a0, a1, b1);
    return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
           ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

namespace {

// Apex of the minimal translate containing both points: the componentwise
// max in normal coordinates (the cone all common supersets share).
Vec3 minimal_pair_apex(const ConeOps& ops, const Vec3& p, const Vec3& q) {
    Vec3 apex{0, 0, 0};
    for (int l = 0; l < 3; ++l) apex += ops.dual[l] * std::max(dot(ops.n[l], p), dot(ops.n[l], q));
    return apex;
}

double polyline_angle(const std::vector<Vec2>& poly, bool from_front) {
    const Vec2 base = from_front ? poly.front() : poly.back();
    for (std::size_t i = 1; i < poly.size(); ++i) {
        const Vec2 next = from_front ? poly[i] : poly[poly.size() - 1 - i];
        if (dist(next, base) > 1e-12) return std::atan2(next.y - base.y, next.x - base.x);
    }
    return 0.0;
}

} // namespace

DDelaunay d_delaunay(std::span<const Vec3> pts, const SimplicialCone& flat_cone, const Frame& frame) {
    if (pts.empty()) throw ValidationError("d_delaunay needs at least one point");
    DDelaunay dt;
    dt.pts.assign(pts.begin(), pts.end());
    for (const auto& p : pts) dt.pos.push_back(frame.tau(p));
    const int n = int(pts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(dt.pos[i], dt.pos[j]) <= kGeoTol)
                throw NotATriangulation("tau is not injective on the working points");

    const ConeOps ops(flat_cone);
    const simd::PointsSoA soa(pts);

    // Edges with their two-point witnesses.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            PinnedCone witness;
            if (!dd_edge_exists(ops, pts, soa, a, b, &witness)) continue;
            DDelaunay::Edge e;
            e.a = a;
            e.b = b;
            e.witness = witness;
            const Vec2 mid = frame.tau(minimal_pair_apex(ops, pts[a], pts[b]));
            e.polyline = {dt.pos[a], mid, dt.pos[b]};
            if (dist(e.polyline[0], e.polyline[1]) < 1e-12 ||
                dist(e.polyline[1], e.polyline[2]) < 1e-12)
                e.polyline = {dt.pos[a], dt.pos[b]};
            dt.edges.push_back(std::move(e));
        }

    // Triangles: the unique empty translate with the triple on its boundary.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                bool found = false;
                PinnedCone witness;
                const std::array<int, 3> tri = {a, b, c};
                std::array<int, 3> perm = {0, 1, 2};
                do {
                    const Vec3 apex =
                        ops.solve({pts[tri[perm[0]]], pts[tri[perm[1]]], pts[tri[perm[2]]]});
                    PinnedCone pc;
                    pc.apex_pos = apex;
                    pc.grade = 3;
                    for (int l = 0; l < 3; ++l) pc.pins[pc.n_pins++] = {tri[perm[l]], l};
                    SubsetMask strict, closed;
                    const auto forms = ops.forms_at(apex);
                    simd::active_kernels().containment_masks(
                        soa.x.data(), soa.y.data(), soa.z.data(), soa.size(), forms.data(),
                        forms.size(), kGeoTol, strict.w.data(), closed.w.data());
                    pc.strict_mask = strict;
                    pc.closed_mask = closed;
                    if (!strict.none()) continue;
                    if (!closed.test(a) || !closed.test(b) || !closed.test(c)) continue;
                    found = true;
                    witness = pc;
                    break;
                } while (std::next_permutation(perm.begin(), perm.end()));
                if (!found) continue;
                DDelaunay::Tri t;
                t.a = a;
                t.b = b;
                t.c = c;
                t.witness = witness;
                dt.tris.push_back(std::move(t));
            }

    // Embedding checks: pairwise non-crossing polylines.
    for (std::size_t e1 = 0; e1 < dt.edges.size(); ++e1)
        for (std::size_t e2 = e1 + 1; e2 < dt.edges.size(); ++e2) {
            const auto& p1 = dt.edges[e1].polyline;
            const auto& p2 = dt.edges[e2].polyline;
            for (std::size_t s1 = 0; s1 + 1 < p1.size(); ++s1)
                for (std::size_t s2 = 0; s2 + 1 < p2.size(); ++s2)
                    if (segments_cross(p1[s1], p1[s1 + 1], p2[s2], p2[s2 + 1]))
                        throw NotATriangulation("embedded edges cross");
        }

    // Rotation system.
    dt.vertex_edges.assign(n, {});
    for (int e = 0; e < int(dt.edges.size()); ++e) {
        dt.vertex_edges[dt.edges[e].a].push_back(e);
        dt.vertex_edges[dt.edges[e].b].push_back(e);
    }
    for (int v = 0; v < n; ++v) {
        std::sort(dt.vertex_edges[v].begin(), dt.vertex_edges[v].end(), [&](int ea, int eb) {
            const auto& pa = dt.edges[ea].polyline;
            const auto& pb = dt.edges[eb].polyline;
            const double aa = polyline_angle(pa, dt.edges[ea].a == v);
            const double ab = polyline_angle(pb, dt.edges[eb].a == v);
            return aa < ab;
        });
    }

    if (n == 1) {
        dt.outer_cycle = {0};
        return dt;
    }

    // Face tracing over half-edges. Half-edge id: 2*e + (0 if a->b else 1).
    const int m = int(dt.edges.size());
    auto he_from = [&](int h) { return h & 1 ? dt.edges[h >> 1].b : dt.edges[h >> 1].a; };
    auto he_to = [&](int h) { return h & 1 ? dt.edges[h >> 1].a : dt.edges[h >> 1].b; };
    auto next_he = [&](int h) {
        const int v = he_to(h);
        const auto& ring = dt.vertex_edges[v];
        const int e = h >> 1;
        const int idx = int(std::find(ring.begin(), ring.end(), e) - ring.begin());
        // clockwise-next incident edge around v after the arrival edge
        const int ne = ring[(idx + int(ring.size()) - 1) % ring.size()];
        return 2 * ne + (dt.edges[ne].a == v ? 0 : 1);
    };

    struct Face {
        std::vector<int> verts, half_edges;
        double area = 0.0;
    };
    std::vector<Face> faces;
    std::vector<char> visited(2 * m, 0);
    for (int h0 = 0; h0 < 2 * m; ++h0) {
        if (visited[h0]) continue;
        Face face;
        int h = h0;
        int guard = 0;
        do {
            visited[h] = 1;
            face.verts.push_back(he_from(h));
            face.half_edges.push_back(h);
            const auto& poly = dt.edges[h >> 1].polyline;
            if ((h & 1) == 0) {
                for (std::size_t i = 0; i + 1 < poly.size(); ++i)
                    face.area += cross(poly[i], poly[i + 1]);
            } else {
                for (std::size_t i = poly.size(); i-- > 1;) face.area += cross(poly[i], poly[i - 1]);
            }
            h = next_he(h);
            if (++guard > 4 * m + 4) throw NotATriangulation("face tracing does not close");
        } while (h != h0);
        faces.push_back(std::move(face));
    }

    // Connectivity via Euler's relation (components would break it).
    if (n - m + int(faces.size()) != 2) throw NotATriangulation("Euler relation violated");

    int outer_id = -1;
    for (int f = 0; f < int(faces.size()); ++f)
        if (outer_id < 0 || faces[f].area < faces[outer_id].area) outer_id = f;
    if (faces[outer_id].area > 0) throw NotATriangulation("no outer face found");

    // Every bounded face must be one of the witnessed triangles, and every
    // witnessed triangle must appear as a face.
    std::map<std::array<int, 3>, int> tri_ids;
    for (int t = 0; t < int(dt.tris.size()); ++t)
        tri_ids[{dt.tris[t].a, dt.tris[t].b, dt.tris[t].c}] = t;
    int matched = 0;
    for (int f = 0; f < int(faces.size()); ++f) {
        if (f == outer_id) continue;
        const auto& cyc = faces[f].verts;
        if (cyc.size() != 3) throw NotATriangulation("bounded face is not a triangle");
        std::array<int, 3> key = {cyc[0], cyc[1], cyc[2]};
        std::sort(key.begin(), key.end());
        const auto it = tri_ids.find(key);
        if (it == tri_ids.end()) throw NotATriangulation("face without an empty-cone witness");
        ++matched;
        for (int k = 0; k < 3; ++k) {
            const int h = faces[f].half_edges[k];
            auto& edge = dt.edges[h >> 1];
            if (edge.tri[0] == -1) edge.tri[0] = it->second;
            else if (edge.tri[0] != it->second) edge.tri[1] = it->second;
            dt.tris[it->second].edge[k] = h >> 1;
        }
    }
    if (matched != int(dt.tris.size()))
        throw NotATriangulation("witnessed triangle missing from the embedding");

    dt.outer_cycle = faces[outer_id].verts;
    return dt;
}

std::vector<int> cone_hull(const DDelaunay& dt) { return dt.outer_cycle; }

} // namespace conenet
