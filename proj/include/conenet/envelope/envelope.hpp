#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conenet/geom/shapes.hpp"
#include "conenet/mask.hpp"

namespace conenet {

// A translate of the working cone pinned by 1-3 points on named faces, with
// no point of the working set in its open interior. One-pin "cones of the
// lower envelope" are materialized as far translates realizing the halfspace
// limit; the contained subset is what matters, not the apex location.
struct PinnedCone {
    struct Pin {
        int point = -1;
        int face = -1;
    };
    Vec3 apex_pos;
    std::array<Pin, 3> pins{};
    int n_pins = 0;
    SubsetMask strict_mask, closed_mask; // containment over the working set
    int grade = 3; // number of incidence constraints that generated it

    bool has_pin(int point) const {
        for (int i = 0; i < n_pins; ++i)
            if (pins[i].point == point) return true;
        return false;
    }
};

// Helper algebra for one cone shared across the enumeration routines.
struct ConeOps {
    explicit ConeOps(const SimplicialCone& cone);

    const SimplicialCone* cone;
    std::array<Vec3, 3> n;     // face normals
    std::array<double, 3> nu;  // n_l · internal_ray (all negative)
    double det;                // det of the normal rows
    std::array<Vec3, 3> dual;  // dual basis: n_i · dual[j] = delta_ij

    // Apex position solving n_f · A = n_f · anchor_f for the three rows.
    Vec3 solve(const std::array<Vec3, 3>& anchors) const;
    std::array<simd::AffineForm, 3> forms_at(const Vec3& apex_pos) const;
    double margin(int face, const Vec3& apex_pos, const Vec3& p) const {
        return affine_eval(n[face], p, dot(n[face], apex_pos));
    }

    // Apex slid along the internal ray: +eta shrinks, -eta grows.
    // Entry parameter of q when growing from apex_pos (eta at which q's last
    // positive margin reaches zero).
    double grow_entry(const Vec3& apex_pos, const Vec3& q) const;
    // Exit parameter of q when shrinking from apex_pos.
    double shrink_exit(const Vec3& apex_pos, const Vec3& q) const;
};

// Enumerates the canonical empty translates pinned by 1-3 points of P on
// specified facets: all three-incidence solves, representatives of feasible
// two-incidence sliding families (including the unbounded wedge side), and
// one-pin halfspace limits. Deduplicated by apex within tolerance.
std::vector<PinnedCone> canonical_empty_cones(std::span<const Vec3> P, const SimplicialCone& C);

// Sliding family of translates keeping two incidences fixed; A(s) = A0 + s*w
// with the third face margin decreasing at rate -sigma (sigma > 0). Feasible
// means some open s-range keeps the pins on the cone and the interior empty.
struct SlideFamily {
    bool feasible = false;
    double s_lo = 0.0, s_hi = 0.0; // may be +inf on the wedge-limit side
    Vec3 A0, w;
    int face_k = -1;
    double sigma = 0.0;
};
SlideFamily two_incidence_family(const ConeOps& ops, std::span<const Vec3> P,
                                 const simd::PointsSoA& soa, PinnedCone::Pin a,
                                 PinnedCone::Pin b);

// Delaunay-neighbor predicate: some translate has exactly {a, b} of the set
// on its boundary and nothing inside. Fills the two-pin witness when found.
bool dd_edge_exists(const ConeOps& ops, std::span<const Vec3> P, const simd::PointsSoA& soa,
                    int a, int b, PinnedCone* witness);

// Lower-envelope membership: p is an envelope point iff the cone translate
// with apex at p has empty open interior with respect to P \ {p}.
std::vector<int> envelope_points(std::span<const Vec3> P, const SimplicialCone& C);
bool is_envelope_point(const ConeOps& ops, const simd::PointsSoA& soa, int idx);

struct FlattenedCone {
    SimplicialCone base; // C
    SimplicialCone flat; // C', wider by delta, same apex
    double delta = 0.0;
};

// Tilts each face normal toward -internal_ray by delta, halving delta until
// the envelope and D-Delaunay edge structure agree between delta and delta/2.
FlattenedCone flatten(const SimplicialCone& C, std::span<const Vec3> P);

struct EnvelopeData {
    std::vector<int> envelope; // indices into P forming L
    struct Projection {
        int point = -1;
        Vec3 image;                 // p' on the flattened envelope
        std::array<int, 3> pins{};  // witness envelope points (1-3)
        int n_pins = 0;
        double ray_param = 0.0;     // s* with p' = p + s* u
    };
    std::vector<Projection> projections; // one per non-envelope point
};

// Projects every non-envelope point along the internal ray onto the
// flattened lower envelope and records the pinning witnesses of the first
// boundary contact.
EnvelopeData project_nonenvelope(std::span<const Vec3> P, const FlattenedCone& C);

// Distance along the internal ray from x to the flattened envelope of the
// given envelope point set (0 when x is already on or below it).
double envelope_ray_distance(const ConeOps& flat_ops, std::span<const Vec3> pts, const Vec3& x);

} // namespace conenet
