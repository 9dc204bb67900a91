#include <cmath>
#include <limits>
#include <unordered_set>

#include "conenet/envelope/envelope.hpp"
#include "conenet/geom/perturb.hpp"

namespace conenet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 solve3(const Vec3& r0, const Vec3& r1, const Vec3& r2, const Vec3& rhs, double min_det = kDegenTol) {
    const double det = dot(r0, cross(r1, r2));
    if (std::fabs(det) < min_det) throw DegeneratePolytope("singular incidence system");
    return (cross(r1, r2) * rhs.x + cross(r2, r0) * rhs.y + cross(r0, r1) * rhs.z) / det;
}

void masks_for(const simd::PointsSoA& soa, std::span<const simd::AffineForm> forms,
               SubsetMask& strict, SubsetMask& closed) {
    if (soa.size() == 0) return;
    simd::active_kernels().containment_masks(soa.x.data(), soa.y.data(), soa.z.data(), soa.size(),
                                             forms.data(), forms.size(), kGeoTol,
                                             strict.w.data(), closed.w.data());
}

struct ApexKey {
    std::int64_t x, y, z;
    bool operator==(const ApexKey&) const = default;
};
struct ApexKeyHash {
    std::size_t operator()(const ApexKey& k) const {
        std::size_t h = std::hash<std::int64_t>()(k.x);
        h = h * 1099511628211ull ^ std::hash<std::int64_t>()(k.y);
        h = h * 1099511628211ull ^ std::hash<std::int64_t>()(k.z);
        return h;
    }
};
ApexKey quantize(const Vec3& a) {
    return {std::llround(a.x * 1e7), std::llround(a.y * 1e7), std::llround(a.z * 1e7)};
}

} // namespace

ConeOps::ConeOps(const SimplicialCone& c) : cone(&c) {
    for (int l = 0; l < 3; ++l) {
        n[l] = c.faces[l].normal;
        nu[l] = dot(n[l], c.internal_ray);
        if (nu[l] >= 0.0) throw DegeneratePolytope("internal ray not interior to cone");
    }
    det = dot(n[0], cross(n[1], n[2]));
    if (std::fabs(det) < kDegenTol) throw DegeneratePolytope("cone normals dependent");
    dual[0] = cross(n[1], n[2]) / det;
    dual[1] = cross(n[2], n[0]) / det;
    dual[2] = cross(n[0], n[1]) / det;
}

Vec3 ConeOps::solve(const std::array<Vec3, 3>& anchors) const {
    return dual[0] * dot(n[0], anchors[0]) + dual[1] * dot(n[1], anchors[1]) +
           dual[2] * dot(n[2], anchors[2]);
}

std::array<simd::AffineForm, 3> ConeOps::forms_at(const Vec3& apex_pos) const {
    return {{{n[0], dot(n[0], apex_pos)}, {n[1], dot(n[1], apex_pos)}, {n[2], dot(n[2], apex_pos)}}};
}

double ConeOps::grow_entry(const Vec3& apex_pos, const Vec3& q) const {
    double eta = -kInf;
    for (int l = 0; l < 3; ++l) eta = std::max(eta, margin(l, apex_pos, q) / (-nu[l]));
    return eta;
}

double ConeOps::shrink_exit(const Vec3& apex_pos, const Vec3& q) const {
    double lam = kInf;
    for (int l = 0; l < 3; ++l) lam = std::min(lam, margin(l, apex_pos, q) / nu[l]);
    return lam;
}

namespace {

// Shared enumeration driver. `emit` sees every valid canonical translate;
// validity means all pins lie on the (closed) cone. Emptiness filtering is
// the caller's choice so the same sweep serves both the canonical-empty-cone
// enumeration and the degeneracy audit.
template <typename Emit>
void enumerate_incidence_systems(const ConeOps& ops, std::span<const Vec3> P,
                                 const simd::PointsSoA& soa, Emit&& emit) {
    const int n = int(P.size());
    auto consider = [&](const Vec3& apex, std::initializer_list<PinnedCone::Pin> pins, int grade) {
        PinnedCone pc;
        pc.apex_pos = apex;
        pc.grade = grade;
        for (const auto& p : pins) pc.pins[pc.n_pins++] = p;
        masks_for(soa, ops.forms_at(apex), pc.strict_mask, pc.closed_mask);
        for (int i = 0; i < pc.n_pins; ++i)
            if (!pc.closed_mask.test(pc.pins[i].point)) return; // pin fell off the cone
        emit(pc);
    };

    // Three distinct points, one per face.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                const Vec3 apex = ops.solve({P[a], P[b], P[c]});
                consider(apex, {{a, 0}, {b, 1}, {c, 2}}, 3);
            }
        }
    // One point on an edge (two faces), another on the remaining face.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            for (int k = 0; k < 3; ++k) {
                std::array<Vec3, 3> anchors = {P[a], P[a], P[a]};
                anchors[k] = P[b];
                const int i = (k + 1) % 3, j = (k + 2) % 3;
                consider(ops.solve(anchors), {{a, i}, {a, j}, {b, k}}, 3);
            }
        }
    // Apex at a point: all three faces pinned by it.
    for (int a = 0; a < n; ++a) consider(P[a], {{a, 0}, {a, 1}, {a, 2}}, 3);
}

} // namespace

SlideFamily two_incidence_family(const ConeOps& ops, std::span<const Vec3> P,
                                 const simd::PointsSoA& soa, PinnedCone::Pin a, PinnedCone::Pin b) {
    SlideFamily fam;
    fam.feasible = false;
    if (a.face == b.face) return fam;
    const Vec3 ni = ops.n[a.face], nj = ops.n[b.face];
    Vec3 w = cross(ni, nj);
    const int k = 3 - a.face - b.face;
    double sigma = dot(ops.n[k], w);
    if (sigma < 0.0) { w = -w; sigma = -sigma; }
    if (sigma < kDegenTol) return fam;
    const Vec3 mid = (P[a.point] + P[b.point]) * 0.5;
    const Vec3 A0 = solve3(ni, nj, w, {dot(ni, P[a.point]), dot(nj, P[b.point]), dot(w, mid)});

    // Constant-margin validity of the pins on each other's faces.
    if (ops.margin(b.face, A0, P[a.point]) > kGeoTol) return fam;
    if (ops.margin(a.face, A0, P[b.point]) > kGeoTol) return fam;

    double s_lo = -kInf, s_hi = kInf;
    s_lo = std::max(s_lo, (ops.margin(k, A0, P[a.point]) - kGeoTol) / sigma);
    s_lo = std::max(s_lo, (ops.margin(k, A0, P[b.point]) - kGeoTol) / sigma);
    for (std::size_t r = 0; r < P.size(); ++r) {
        if (int(r) == a.point || int(r) == b.point) continue;
        if (ops.margin(a.face, A0, P[r]) < -kGeoTol && ops.margin(b.face, A0, P[r]) < -kGeoTol)
            s_hi = std::min(s_hi, (ops.margin(k, A0, P[r]) + kGeoTol) / sigma);
    }
    (void)soa;
    fam.s_lo = s_lo;
    fam.s_hi = s_hi;
    fam.A0 = A0;
    fam.w = w;
    fam.face_k = k;
    fam.sigma = sigma;
    fam.feasible = s_hi - s_lo > 1e-9;
    return fam;
}

bool dd_edge_exists(const ConeOps& ops, std::span<const Vec3> P, const simd::PointsSoA& soa,
                    int a, int b, PinnedCone* witness) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const auto fam = two_incidence_family(ops, P, soa, {a, i}, {b, j});
            if (!fam.feasible) continue;
            const double s_mid =
                std::isfinite(fam.s_hi) ? 0.5 * (fam.s_lo + fam.s_hi) : fam.s_lo + 1.0;
            const Vec3 apex = fam.A0 + fam.w * s_mid;
            PinnedCone pc;
            pc.apex_pos = apex;
            pc.grade = 2;
            pc.pins[pc.n_pins++] = {a, i};
            pc.pins[pc.n_pins++] = {b, j};
            masks_for(soa, ops.forms_at(apex), pc.strict_mask, pc.closed_mask);
            if (!pc.strict_mask.none()) continue;
            if (!pc.closed_mask.test(a) || !pc.closed_mask.test(b)) continue;
            if (witness) *witness = pc;
            return true;
        }
    return false;
}

std::vector<PinnedCone> canonical_empty_cones(std::span<const Vec3> P, const SimplicialCone& C) {
    std::vector<PinnedCone> out;
    if (P.empty()) return out;
    if (P.size() > SubsetMask::kMaxPoints)
        throw ValidationError("point set exceeds the desk-scale mask capacity");
    const ConeOps ops(C);
    const simd::PointsSoA soa(P);
    std::unordered_set<ApexKey, ApexKeyHash> seen;
    auto emit = [&](const PinnedCone& pc) {
        if (!pc.strict_mask.none()) return; // interior must be empty
        if (seen.insert(quantize(pc.apex_pos)).second) out.push_back(pc);
    };

    enumerate_incidence_systems(ops, P, soa, emit);

    // Two-incidence sliding families: interior representative plus the
    // unbounded (wedge-limit) side when it exists.
    const int n = int(P.size());
    Box3 bb;
    for (const auto& p : P) bb.expand(p);
    const double slack = std::max(1.0, bb.diameter());
    auto family_reps = [&](PinnedCone::Pin pa, PinnedCone::Pin pb) {
        const auto fam = two_incidence_family(ops, P, soa, pa, pb);
        if (!fam.feasible) return;
        std::vector<double> reps;
        if (std::isfinite(fam.s_hi)) {
            reps.push_back(0.5 * (fam.s_lo + fam.s_hi));
        } else {
            double max_mk = -kInf;
            for (const auto& q : P) max_mk = std::max(max_mk, ops.margin(fam.face_k, fam.A0, q));
            reps.push_back(std::max(fam.s_lo + 1.0, (max_mk + slack) / fam.sigma));
        }
        for (double s : reps) {
            PinnedCone pc;
            pc.apex_pos = fam.A0 + fam.w * s;
            pc.grade = 2;
            pc.pins[pc.n_pins++] = pa;
            if (!(pa.point == pb.point && pa.face == pb.face)) pc.pins[pc.n_pins++] = pb;
            masks_for(soa, ops.forms_at(pc.apex_pos), pc.strict_mask, pc.closed_mask);
            if (!pc.strict_mask.none()) continue;
            bool pins_ok = true;
            for (int i = 0; i < pc.n_pins; ++i) pins_ok &= pc.closed_mask.test(pc.pins[i].point);
            if (!pins_ok) continue;
            emit(pc);
        }
    };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (i != j) family_reps({a, i}, {b, j});
        }
        // Single point sliding along a cone edge.
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) family_reps({a, i}, {a, j});
    }

    // One-pin halfspace limits: the face plane through the point with an
    // empty open side, materialized as a far translate.
    for (int a = 0; a < n; ++a) {
        for (int i = 0; i < 3; ++i) {
            bool empty_side = true;
            for (int q = 0; q < n && empty_side; ++q)
                if (q != a && dot(ops.n[i], P[q] - P[a]) < -kGeoTol) empty_side = false;
            if (!empty_side) continue;
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            double aj = -kInf, ak = -kInf;
            for (const auto& q : P) {
                aj = std::max(aj, dot(ops.n[j], q - P[a]));
                ak = std::max(ak, dot(ops.n[k], q - P[a]));
            }
            const Vec3 apex = P[a] + ops.dual[j] * (aj + slack) + ops.dual[k] * (ak + slack);
            PinnedCone pc;
            pc.apex_pos = apex;
            pc.grade = 1;
            pc.pins[pc.n_pins++] = {a, i};
            masks_for(soa, ops.forms_at(apex), pc.strict_mask, pc.closed_mask);
            if (!pc.strict_mask.none() || !pc.closed_mask.test(a)) continue;
            emit(pc);
        }
    }
    return out;
}

bool nondegenerate_for_cones(std::span<const Vec3> pts, std::span<const SimplicialCone> cones) {
    if (pts.size() > SubsetMask::kMaxPoints)
        throw ValidationError("point set exceeds the desk-scale mask capacity");
    const simd::PointsSoA soa(pts);
    for (const auto& cone : cones) {
        const ConeOps ops(cone);
        bool ok = true;
        enumerate_incidence_systems(ops, pts, soa, [&](const PinnedCone& pc) {
            const SubsetMask boundary = pc.closed_mask & ~pc.strict_mask;
            if (boundary.count() > 3) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

} // namespace conenet
