#include "conenet/planar/objects.hpp"

#include <algorithm>
#include <cmath>

#include "conenet/planar/ddelaunay.hpp"

namespace conenet {

namespace {

using Poly2 = std::vector<Vec2>;

// value = a·x - b <= 0 keeps the point
struct HalfPlane {
    Vec2 a;
    double b;
    double value(const Vec2& p) const { return dot(a, p) - b; }
};

Poly2 clip(const Poly2& poly, const HalfPlane& hp) {
    Poly2 out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 cur = poly[i], nxt = poly[(i + 1) % n];
        const double vc = hp.value(cur), vn = hp.value(nxt);
        if (vc <= 0) out.push_back(cur);
        if ((vc < 0 && vn > 0) || (vc > 0 && vn < 0)) {
            const double t = vc / (vc - vn);
            out.push_back(cur + (nxt - cur) * t);
        }
    }
    return out;
}

bool strictly_inside(const Poly2& poly, const Vec2& p, double eps = 1e-12) {
    if (poly.size() < 3) return false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
        if (cross(b - a, p - a) <= eps) return false; // assumes ccw polygons
    }
    return true;
}

void make_ccw(Poly2& poly) {
    double area = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        area += cross(poly[i], poly[(i + 1) % poly.size()]);
    if (area < 0) std::reverse(poly.begin(), poly.end());
}

// Clip segment [p, q] to a convex ccw polygon; returns parameter interval.
bool clip_segment(const Poly2& poly, const Vec2& p, const Vec2& q, double& t0, double& t1) {
    t0 = 0.0;
    t1 = 1.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
        const Vec2 inward{-(b - a).y, (b - a).x}; // ccw polygon: inward normal
        const double vp = dot(inward, p - a), vq = dot(inward, q - a);
        if (vp < 0 && vq < 0) return false;
        if (vp < 0) t0 = std::max(t0, vp / (vp - vq));
        if (vq < 0) t1 = std::min(t1, vp / (vp - vq));
        if (t0 >= t1) return false;
    }
    return t0 < t1;
}

} // namespace

BoundaryTrace trace_object_boundary(const Vec3& apex_pos, std::span<const Vec3> pts,
                                    const SimplicialCone& flat_cone, const Frame& frame,
                                    const Box3& clip_box) {
    BoundaryTrace out;
    const ConeOps ops(flat_cone);
    const Vec3 box_c = clip_box.center();
    const double box_r = 0.5 * clip_box.diameter() + 1.0;

    for (int l = 0; l < 3; ++l) {
        const Vec3 nl = ops.n[l];
        const double level = dot(nl, apex_pos);
        if (std::fabs(dot(nl, box_c) - level) > box_r) continue; // plane misses the box

        // In-plane frame.
        const Vec3 O = box_c - nl * (dot(nl, box_c) - level);
        const Vec3 pick = std::fabs(nl.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 f1 = normalized(cross(pick, nl));
        const Vec3 f2 = cross(nl, f1);
        auto to3 = [&](const Vec2& st) { return O + f1 * st.x + f2 * st.y; };

        const double R = 4.0 * box_r;
        Poly2 big = {{-R, -R}, {R, -R}, {R, R}, {-R, R}};

        auto plane_halfplane = [&](const Vec3& a3, double b3) {
            // a3·x <= b3 restricted to the plane
            return HalfPlane{{dot(a3, f1), dot(a3, f2)}, b3 - dot(a3, O)};
        };

        // Facet strip: other faces of the object plus the working box.
        Poly2 W = big;
        for (int j = 0; j < 3; ++j) {
            if (j == l) continue;
            W = clip(W, plane_halfplane(ops.n[j], dot(ops.n[j], apex_pos)));
            if (W.empty()) break;
        }
        for (int axis = 0; axis < 3 && !W.empty(); ++axis) {
            Vec3 e{0, 0, 0};
            e = axis == 0 ? Vec3{1, 0, 0} : axis == 1 ? Vec3{0, 1, 0} : Vec3{0, 0, 1};
            W = clip(W, plane_halfplane(e, clip_box.hi[axis]));
            if (!W.empty()) W = clip(W, plane_halfplane(-e, -clip_box.lo[axis]));
        }
        if (W.size() < 3) continue;
        make_ccw(W);

        // Shadow regions: x on the plane with q strictly below the apex-at-x
        // cone on every face, i.e. n_j·x > n_j·q for all j.
        std::vector<Poly2> regions;
        for (const auto& q : pts) {
            Poly2 r = big;
            for (int j = 0; j < 3; ++j) {
                r = clip(r, plane_halfplane(-ops.n[j], -dot(ops.n[j], q)));
                if (r.empty()) break;
            }
            if (r.size() >= 3) {
                make_ccw(r);
                regions.push_back(std::move(r));
            }
        }

        // Boundary of the union of shadow regions, restricted to the strip.
        for (std::size_t ri = 0; ri < regions.size(); ++ri) {
            const auto& reg = regions[ri];
            for (std::size_t e = 0; e < reg.size(); ++e) {
                Vec2 p = reg[e], q = reg[(e + 1) % reg.size()];
                double t0, t1;
                if (!clip_segment(W, p, q, t0, t1)) continue;
                const Vec2 cp = p + (q - p) * t0, cq = p + (q - p) * t1;
                // split at crossings with other regions' edges
                std::vector<double> cuts = {0.0, 1.0};
                const Vec2 d1 = cq - cp;
                for (std::size_t rj = 0; rj < regions.size(); ++rj) {
                    if (rj == ri) continue;
                    const auto& other = regions[rj];
                    for (std::size_t e2 = 0; e2 < other.size(); ++e2) {
                        const Vec2 a = other[e2], b = other[(e2 + 1) % other.size()];
                        const Vec2 d2 = b - a, r = a - cp;
                        const double den = cross(d1, d2);
                        if (std::fabs(den) < 1e-15) continue;
                        const double t = cross(r, d2) / den;
                        const double u = cross(r, d1) / den;
                        if (t > 1e-12 && t < 1.0 - 1e-12 && u > -1e-9 && u < 1.0 + 1e-9)
                            cuts.push_back(t);
                    }
                }
                std::sort(cuts.begin(), cuts.end());
                for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
                    const double tm = 0.5 * (cuts[c] + cuts[c + 1]);
                    if (cuts[c + 1] - cuts[c] < 1e-12) continue;
                    const Vec2 mid = cp + (cq - cp) * tm;
                    bool covered = false;
                    for (std::size_t rj = 0; rj < regions.size() && !covered; ++rj)
                        if (rj != ri && strictly_inside(regions[rj], mid)) covered = true;
                    if (covered) continue;
                    const Vec2 s0 = cp + (cq - cp) * cuts[c];
                    const Vec2 s1 = cp + (cq - cp) * cuts[c + 1];
                    out.segments.push_back({frame.tau(to3(s0)), frame.tau(to3(s1))});
                }
            }
        }
    }
    return out;
}

int crossing_count(const BoundaryTrace& a, const BoundaryTrace& b) {
    int count = 0;
    for (const auto& s1 : a.segments)
        for (const auto& s2 : b.segments)
            if (segments_cross(s1[0], s1[1], s2[0], s2[1])) ++count;
    return count;
}

int crossing_count(const Vec3& apex_a, const Vec3& apex_b, std::span<const Vec3> pts,
                   const SimplicialCone& flat_cone, const Frame& frame, const Box3& clip) {
    const auto ta = trace_object_boundary(apex_a, pts, flat_cone, frame, clip);
    const auto tb = trace_object_boundary(apex_b, pts, flat_cone, frame, clip);
    return crossing_count(ta, tb);
}

} // namespace conenet
