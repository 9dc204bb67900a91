#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "conenet/envelope/envelope.hpp"
#include "conenet/geom/perturb.hpp"

namespace conenet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool is_envelope_point(const ConeOps& ops, const simd::PointsSoA& soa, int idx) {
    const Vec3 p = soa.at(idx);
    SubsetMask strict, closed;
    const auto forms = ops.forms_at(p);
    simd::active_kernels().containment_masks(soa.x.data(), soa.y.data(), soa.z.data(), soa.size(),
                                             forms.data(), forms.size(), kGeoTol, strict.w.data(),
                                             closed.w.data());
    strict.reset(idx); // the apex itself is on the boundary, never interior
    return strict.none();
}

std::vector<int> envelope_points(std::span<const Vec3> P, const SimplicialCone& C) {
    std::vector<int> L;
    if (P.empty()) return L;
    const ConeOps ops(C);
    const simd::PointsSoA soa(P);
    for (int i = 0; i < int(P.size()); ++i)
        if (is_envelope_point(ops, soa, i)) L.push_back(i);
    return L;
}

namespace {

SimplicialCone tilt(const SimplicialCone& C, double delta) {
    SimplicialCone out = C;
    const Vec3 up = -C.internal_ray;
    for (int l = 0; l < 3; ++l) {
        const Vec3 n = C.faces[l].normal;
        const Vec3 m = normalized(up - n * dot(up, n));
        const Vec3 tilted = normalized(n * std::cos(delta) + m * std::sin(delta));
        out.faces[l] = {tilted, dot(tilted, C.apex)};
    }
    return out;
}

bool contains_base_cone(const SimplicialCone& base, const SimplicialCone& wide) {
    // Every extreme ray of the base cone must satisfy the widened faces.
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        Vec3 ray = cross(base.faces[j].normal, base.faces[k].normal);
        if (dot(ray, base.faces[i].normal) > 0.0) ray = -ray;
        for (int l = 0; l < 3; ++l)
            if (dot(wide.faces[l].normal, ray) > 1e-12 * norm(ray)) return false;
    }
    return true;
}

using EdgeSet = std::set<std::pair<int, int>>;

EdgeSet dd_edge_set(std::span<const Vec3> pts, const SimplicialCone& cone) {
    EdgeSet edges;
    const ConeOps ops(cone);
    const simd::PointsSoA soa(pts);
    for (int a = 0; a < int(pts.size()); ++a)
        for (int b = a + 1; b < int(pts.size()); ++b)
            if (dd_edge_exists(ops, pts, soa, a, b, nullptr)) edges.insert({a, b});
    return edges;
}

} // namespace

FlattenedCone flatten(const SimplicialCone& C, std::span<const Vec3> P) {
    C.validate();
    const SimplicialCone ctx[] = {C};
    if (!nondegenerate_for_cones(P, ctx))
        throw FlattenFailed("input degenerate for the base cone; no delta can stabilize it");
    const auto L = envelope_points(P, C);
    std::vector<Vec3> env_pts;
    for (int i : L) env_pts.push_back(P[i]);

    for (double delta = 1e-4; delta >= 1e-12; delta *= 0.5) {
        const SimplicialCone c1 = tilt(C, delta);
        const SimplicialCone c2 = tilt(C, delta * 0.5);
        if (!contains_base_cone(C, c1)) continue;
        if (envelope_points(P, c1) != L || envelope_points(P, c2) != L) continue;
        if (env_pts.size() >= 2 && dd_edge_set(env_pts, c1) != dd_edge_set(env_pts, c2)) continue;
        FlattenedCone out;
        out.base = C;
        out.flat = c1;
        out.delta = delta;
        return out;
    }
    throw FlattenFailed("no stable flattening delta above 1e-12");
}

double envelope_ray_distance(const ConeOps& flat_ops, std::span<const Vec3> pts, const Vec3& x) {
    double s_star = 0.0;
    for (const auto& q : pts) {
        double s_q = kInf;
        for (int l = 0; l < 3; ++l)
            s_q = std::min(s_q, dot(flat_ops.n[l], x - q) / (-flat_ops.nu[l]));
        s_star = std::max(s_star, s_q);
    }
    return s_star;
}

namespace {

// Pins of a maximal empty translate whose boundary passes through x: start
// from the apex-at-x cone (empty by construction of x), ascend while keeping
// acquired contacts, stop at three pins or when sliding is blocked.
struct WalkResult {
    std::array<int, 3> pins{};
    int n_pins = 0;
};

WalkResult witness_walk(const ConeOps& ops, std::span<const Vec3> P, const Vec3& x) {
    WalkResult res;
    const int n = int(P.size());

    // First contact: the point whose max margin at apex-at-x is smallest
    // (it is ~0 for the touching point that froze the projection).
    int q0 = -1, l0 = -1;
    double best = kInf;
    for (int q = 0; q < n; ++q) {
        double m = -kInf;
        int arg = -1;
        for (int l = 0; l < 3; ++l) {
            const double v = ops.margin(l, x, P[q]);
            if (v > m) { m = v; arg = l; }
        }
        if (m < best) { best = m; q0 = q; l0 = arg; }
    }
    if (q0 < 0) return res;
    res.pins[res.n_pins++] = q0;

    // Ascend within the face plane of the first contact.
    const Vec3 up = -ops.cone->internal_ray;
    Vec3 e = up - ops.n[l0] * dot(up, ops.n[l0]);
    if (norm(e) < kDegenTol) return res;
    e = normalized(e);
    // x must stay inside: its margins move by -eta * n_l . e.
    for (int l = 0; l < 3; ++l)
        if (l != l0 && dot(ops.n[l], e) < -kDegenTol) return res; // blocked immediately

    double eta_stop = kInf;
    int q1 = -1, l1 = -1;
    for (int r = 0; r < n; ++r) {
        if (r == q0) continue;
        if (ops.margin(l0, x, P[r]) >= -kGeoTol) continue; // never interior along e
        double entry = 0.0;
        int tight = -1;
        bool never = false;
        for (int l = 0; l < 3; ++l) {
            if (l == l0) continue;
            const double m = ops.margin(l, x, P[r]);
            const double rate = dot(ops.n[l], e);
            if (m > kGeoTol) {
                if (rate <= kDegenTol) { never = true; break; }
                const double t = m / rate;
                if (t > entry) { entry = t; tight = l; }
            }
        }
        if (never || tight < 0) continue;
        if (entry < eta_stop) { eta_stop = entry; q1 = r; l1 = tight; }
    }
    if (q1 < 0) return res; // unbounded ascent, single pin
    res.pins[res.n_pins++] = q1;
    Vec3 A = x + e * eta_stop;

    // Slide along the edge of the two pinned faces, growing the third face.
    const int k = 3 - l0 - l1;
    Vec3 w = cross(ops.n[l0], ops.n[l1]);
    double sigma = dot(ops.n[k], w);
    if (sigma < 0.0) { w = -w; sigma = -sigma; }
    if (sigma < kDegenTol) return res;
    double s_stop = kInf;
    int q2 = -1;
    for (int r = 0; r < n; ++r) {
        if (r == q0 || r == q1) continue;
        if (ops.margin(l0, A, P[r]) >= -kGeoTol) continue;
        if (ops.margin(l1, A, P[r]) >= -kGeoTol) continue;
        const double mk = ops.margin(k, A, P[r]);
        if (mk <= kGeoTol) continue;
        const double s = mk / sigma;
        if (s < s_stop) { s_stop = s; q2 = r; }
    }
    if (q2 >= 0) res.pins[res.n_pins++] = q2;
    return res;
}

} // namespace

EnvelopeData project_nonenvelope(std::span<const Vec3> P, const FlattenedCone& C) {
    EnvelopeData data;
    const ConeOps base_ops(C.base);
    const ConeOps flat_ops(C.flat);
    const simd::PointsSoA soa(P);
    std::vector<char> on_env(P.size(), 0);
    for (int i = 0; i < int(P.size()); ++i) {
        if (is_envelope_point(base_ops, soa, i)) {
            on_env[i] = 1;
            data.envelope.push_back(i);
        }
    }
    const Vec3 u = C.flat.internal_ray;
    for (int i = 0; i < int(P.size()); ++i) {
        if (on_env[i]) continue;
        // First boundary contact of the descending ray with the union of
        // empty flattened translates.
        double s_star = 0.0;
        for (int q = 0; q < int(P.size()); ++q) {
            if (q == i) continue;
            double s_q = kInf;
            for (int l = 0; l < 3; ++l)
                s_q = std::min(s_q, dot(flat_ops.n[l], P[i] - P[q]) / (-flat_ops.nu[l]));
            s_star = std::max(s_star, s_q);
        }
        if (s_star <= 0.0)
            throw ProjectionMiss("non-envelope point already on the flattened envelope");
        EnvelopeData::Projection proj;
        proj.point = i;
        proj.ray_param = s_star;
        proj.image = P[i] + u * s_star;
        const auto walk = witness_walk(flat_ops, P, proj.image);
        if (walk.n_pins == 0) throw ProjectionMiss("no witness contact at the projected point");
        proj.pins = walk.pins;
        proj.n_pins = walk.n_pins;
        data.projections.push_back(proj);
    }
    return data;
}

} // namespace conenet
