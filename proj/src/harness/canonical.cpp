#include "conenet/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace conenet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Incidence {
    int point;
    int face;
};

std::optional<Vec3> solve_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2, const Vec3& rhs) {
    const double det = dot(r0, cross(r1, r2));
    if (std::fabs(det) < 1e-9) return std::nullopt;
    return (cross(r1, r2) * rhs.x + cross(r2, r0) * rhs.y + cross(r0, r1) * rhs.z) / det;
}

struct OffsetKey {
    std::int64_t x, y, z;
    bool operator==(const OffsetKey&) const = default;
};
struct OffsetKeyHash {
    std::size_t operator()(const OffsetKey& k) const {
        std::size_t h = std::hash<std::int64_t>()(k.x);
        h = h * 1099511628211ull ^ std::hash<std::int64_t>()(k.y);
        h = h * 1099511628211ull ^ std::hash<std::int64_t>()(k.z);
        return h;
    }
};
OffsetKey quantize(const Vec3& a) {
    return {std::llround(a.x * 1e7), std::llround(a.y * 1e7), std::llround(a.z * 1e7)};
}

} // namespace

CanonicalShape CanonicalShape::from_cone(const SimplicialCone& c) {
    CanonicalShape s;
    s.is_cone = true;
    s.internal_ray = c.internal_ray;
    for (const auto& f : c.faces) s.faces.push_back({f.normal, 0.0});
    return s;
}

CanonicalShape CanonicalShape::from_polytope(const ConvexPolytope& T) {
    CanonicalShape s;
    s.is_cone = false;
    s.faces = T.facets;
    s.pin_reach = T.diameter();
    for (std::size_t f = 0; f < T.facets.size(); ++f) {
        Vec3 c{0, 0, 0};
        for (int vi : T.facet_vertices[f]) c += T.vertices[vi];
        s.face_refs.push_back(c / double(T.facet_vertices[f].size()));
    }
    return s;
}

CanonicalTranslates::CanonicalTranslates(CanonicalShape shape, std::span<const Vec3> pts)
    : shape_(std::move(shape)), pts_(pts.begin(), pts.end()), soa_(pts) {
    if (pts_.size() > SubsetMask::kMaxPoints)
        throw ValidationError("point set exceeds the desk-scale mask capacity");
    enumerate();
}

SubsetMask CanonicalTranslates::closed_mask_at(const Vec3& offset) const {
    SubsetMask strict, closed;
    const auto forms = shape_.forms_at(offset);
    if (!pts_.empty())
        simd::active_kernels().containment_masks(soa_.x.data(), soa_.y.data(), soa_.z.data(),
                                                 soa_.size(), forms.data(), forms.size(), kGeoTol,
                                                 strict.w.data(), closed.w.data());
    return closed;
}

SubsetMask CanonicalTranslates::strict_mask_at(const Vec3& offset) const {
    SubsetMask strict, closed;
    const auto forms = shape_.forms_at(offset);
    if (!pts_.empty())
        simd::active_kernels().containment_masks(soa_.x.data(), soa_.y.data(), soa_.z.data(),
                                                 soa_.size(), forms.data(), forms.size(), kGeoTol,
                                                 strict.w.data(), closed.w.data());
    return strict;
}

void CanonicalTranslates::add_candidate(const Vec3& offset, int grade) {
    CanonicalTranslate ct;
    ct.offset = offset;
    ct.grade = grade;
    const auto forms = shape_.forms_at(offset);
    simd::active_kernels().containment_masks(soa_.x.data(), soa_.y.data(), soa_.z.data(), soa_.size(),
                                             forms.data(), forms.size(), kGeoTol, ct.strict.w.data(),
                                             ct.closed.w.data());
    candidates_.push_back(ct);
}

void CanonicalTranslates::enumerate() {
    const int n = int(pts_.size());
    const int nf = int(shape_.faces.size());
    if (n == 0) return;

    std::unordered_set<OffsetKey, OffsetKeyHash> seen;
    auto push_offset = [&](const Vec3& off, int grade) {
        if (seen.insert(quantize(off)).second) add_candidate(off, grade);
    };

    // All determined incidence systems: three (point, facet) pairs with
    // independent facet rows. A point may carry several incidences.
    std::vector<Incidence> inc;
    inc.reserve(std::size_t(n) * nf);
    for (int p = 0; p < n; ++p)
        for (int f = 0; f < nf; ++f) inc.push_back({p, f});

    const double reach2 = shape_.pin_reach > 0
                              ? (shape_.pin_reach + 1e-6) * (shape_.pin_reach + 1e-6)
                              : kInf;
    auto close_enough = [&](int p, int q) {
        return p == q || norm2(pts_[p] - pts_[q]) <= reach2;
    };

    const std::size_t m = inc.size();
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const auto& ia = inc[a];
            const auto& ib = inc[b];
            if (ia.face == ib.face) continue; // parallel rows never determine
            if (!close_enough(ia.point, ib.point)) continue;
            for (std::size_t c = b + 1; c < m; ++c) {
                const auto& ic = inc[c];
                if (ic.face == ia.face || ic.face == ib.face) continue;
                if (!close_enough(ia.point, ic.point) || !close_enough(ib.point, ic.point)) continue;
                const Vec3 r0 = shape_.faces[ia.face].normal;
                const Vec3 r1 = shape_.faces[ib.face].normal;
                const Vec3 r2 = shape_.faces[ic.face].normal;
                const Vec3 rhs{dot(r0, pts_[ia.point]) - shape_.faces[ia.face].offset,
                               dot(r1, pts_[ib.point]) - shape_.faces[ib.face].offset,
                               dot(r2, pts_[ic.point]) - shape_.faces[ic.face].offset};
                const auto off = solve_rows(r0, r1, r2, rhs);
                if (!off) continue;
                // Every arrangement vertex counts, even when a constrained
                // point misses the shape: adjacent offset cells still
                // realize subsets only reachable from here.
                push_offset(*off, 3);
            }
        }
    }

    // Per-point single-facet contacts. For bounded shapes the contact is at
    // the facet centroid; for cones it is the halfspace-limit realization.
    Box3 bb;
    for (const auto& p : pts_) bb.expand(p);
    const double slack = std::max(1.0, bb.diameter());
    if (!shape_.is_cone) {
        for (int p = 0; p < n; ++p)
            for (int f = 0; f < nf; ++f) push_offset(pts_[p] - shape_.face_refs[f], 1);
    } else {
        // Wedge canonicals: two incidences, third face pushed beyond reach.
        const Vec3 n0 = shape_.faces[0].normal, n1 = shape_.faces[1].normal,
                   n2 = shape_.faces[2].normal;
        const double det = dot(n0, cross(n1, n2));
        const std::array<Vec3, 3> dual = {cross(n1, n2) / det, cross(n2, n0) / det,
                                          cross(n0, n1) / det};
        auto far_offset = [&](int i, int j, const Vec3& anchor_i, const Vec3& anchor_j) {
            const int k = 3 - i - j;
            Vec3 off = dual[i] * dot(shape_.faces[i].normal, anchor_i) +
                       dual[j] * dot(shape_.faces[j].normal, anchor_j);
            double mk = -kInf;
            for (const auto& q : pts_)
                mk = std::max(mk, dot(shape_.faces[k].normal, q - off));
            return off + dual[k] * (mk + slack);
        };
        for (int p = 0; p < n; ++p) {
            for (int i = 0; i < 3; ++i) {
                // halfspace limit for face i through p
                const int j = (i + 1) % 3, k = (i + 2) % 3;
                Vec3 off = dual[i] * dot(shape_.faces[i].normal, pts_[p]);
                double mj = -kInf, mk = -kInf;
                for (const auto& q : pts_) {
                    mj = std::max(mj, dot(shape_.faces[j].normal, q - off));
                    mk = std::max(mk, dot(shape_.faces[k].normal, q - off));
                }
                push_offset(off + dual[j] * (mj + slack) + dual[k] * (mk + slack), 1);
            }
            // Wedge canonicals, including the single-point double contact.
            for (int q = p; q < n; ++q)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        if (i == j) continue;
                        push_offset(far_offset(i, j, pts_[p], pts_[q]), 2);
                    }
        }
    }

    // Realized subsets: the closed subset at every candidate plus every
    // boundary-resolution reachable by an infinitesimal translation.
    std::unordered_set<SubsetMask, SubsetMaskHash> subset_seen;
    auto push_subset = [&](const SubsetMask& mask, int cand, const Vec3& nudge) {
        if (subset_seen.insert(mask).second) realized_.push_back({mask, cand, nudge});
    };

    for (int ci = 0; ci < int(candidates_.size()); ++ci) {
        const auto& cand = candidates_[ci];
        push_subset(cand.closed, ci, {0, 0, 0});
        const SubsetMask boundary = cand.closed & ~cand.strict;
        if (boundary.none()) continue;
        // Boundary incidences at this position.
        std::vector<Incidence> bi;
        boundary.for_each([&](int p) {
            for (int f = 0; f < nf; ++f) {
                const double mg = affine_eval(shape_.faces[f].normal, pts_[p],
                                              shape_.faces[f].offset +
                                                  dot(shape_.faces[f].normal, cand.offset));
                if (std::fabs(mg) <= kGeoTol) bi.push_back({p, f});
            }
        });
        if (bi.empty() || bi.size() > 3) continue; // degenerate pile-up: perturbation's job
        // Independent rows required for the full sign enumeration; drop
        // dependent combos (they are unreachable anyway).
        for (unsigned sigma = 0; sigma < (1u << bi.size()); ++sigma) {
            // Direction with margin rate -1 for incidences kept inside,
            // +1 for the expelled ones.
            Vec3 rows[3], rhs{0, 0, 0};
            double target[3];
            for (std::size_t t = 0; t < bi.size(); ++t) {
                rows[t] = shape_.faces[bi[t].face].normal;
                target[t] = (sigma >> t) & 1 ? 1.0 : -1.0;
            }
            Vec3 d;
            if (bi.size() == 3) {
                const auto sol = solve_rows(rows[0], rows[1], rows[2], {target[0], target[1], target[2]});
                if (!sol) continue;
                d = *sol;
            } else if (bi.size() == 2) {
                Vec3 r2 = cross(rows[0], rows[1]);
                if (norm2(r2) < 1e-18) continue;
                const auto sol = solve_rows(rows[0], rows[1], r2, {target[0], target[1], 0.0});
                if (!sol) continue;
                d = *sol;
            } else {
                d = rows[0] * target[0];
            }
            // Moving the offset by +eta*d changes the margin of incidence t
            // by -eta*target[t]: positive target keeps the pin, negative
            // expels it. A point stays in only if all its incidences do.
            SubsetMask members = cand.strict;
            boundary.for_each([&](int p) {
                bool in = true;
                for (std::size_t t = 0; t < bi.size(); ++t)
                    if (bi[t].point == p && target[t] < 0) in = false;
                if (in) members.set(p);
            });
            push_subset(members, ci, d);
        }
    }
}

Vec3 CanonicalTranslates::realize_offset(const RealizedSubset& r) const {
    const auto& cand = candidates_[r.candidate];
    if (norm2(r.nudge) == 0.0) return cand.offset;
    // Scale the nudge until the closed containment matches exactly.
    for (double eta = 1e-5; eta >= 1e-13; eta *= 0.1) {
        const Vec3 off = cand.offset + r.nudge * eta;
        SubsetMask strict, closed;
        const auto forms = shape_.forms_at(off);
        simd::active_kernels().containment_masks(soa_.x.data(), soa_.y.data(), soa_.z.data(),
                                                 soa_.size(), forms.data(), forms.size(), kGeoTol,
                                                 strict.w.data(), closed.w.data());
        if (closed == r.members && strict == r.members) return off;
    }
    throw InvariantError("failed to realize a canonical subset by translation");
}

} // namespace conenet
