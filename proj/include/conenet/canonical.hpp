#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conenet/geom/polytope.hpp"
#include "conenet/geom/shapes.hpp"
#include "conenet/mask.hpp"

namespace conenet {

// A translatable intersection of halfspaces. Membership of p in the
// translate at offset t is n_f·(p - t) <= b_f for every face. Cones fold the
// apex into the offset (t is the apex position, b = 0).
struct CanonicalShape {
    std::vector<Halfspace> faces;
    bool is_cone = false;
    Vec3 internal_ray;            // cones only
    double pin_reach = 0.0;       // bounded shapes: max distance between boundary points
    std::vector<Vec3> face_refs;  // bounded shapes: a reference point per facet

    static CanonicalShape from_cone(const SimplicialCone& c);
    static CanonicalShape from_polytope(const ConvexPolytope& T);

    double max_margin(const Vec3& t, const Vec3& p) const {
        double m = -1e300;
        for (const auto& f : faces) m = std::max(m, affine_eval(f.normal, p, f.offset + dot(f.normal, t)));
        return m;
    }
    std::vector<simd::AffineForm> forms_at(const Vec3& t) const {
        std::vector<simd::AffineForm> out(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f)
            out[f] = {faces[f].normal, faces[f].offset + dot(faces[f].normal, t)};
        return out;
    }
};

// Finite witness family for the infinite translate family: translates pinned
// by up to three (point, facet) incidences, single-facet contacts, and (for
// cones) wedge- and halfspace-limit positions, together with the point
// subsets realizable by infinitesimal motions away from each position.
struct CanonicalTranslate {
    Vec3 offset;
    SubsetMask closed, strict;
    int grade = 3; // number of incidence constraints behind it
};

struct RealizedSubset {
    SubsetMask members;   // containment with no boundary ties after the nudge
    int candidate = -1;   // index of the generating canonical translate
    Vec3 nudge;           // zero for the plain closed subset at the candidate
};

class CanonicalTranslates {
  public:
    CanonicalTranslates(CanonicalShape shape, std::span<const Vec3> pts);

    const CanonicalShape& shape() const { return shape_; }
    const std::vector<CanonicalTranslate>& candidates() const { return candidates_; }
    const std::vector<RealizedSubset>& realized() const { return realized_; }

    // Concrete offset whose closed containment equals r.members, found by
    // scaling the nudge until the recount matches. Throws InvariantError if
    // no scale works (a degeneracy leak).
    Vec3 realize_offset(const RealizedSubset& r) const;

    SubsetMask closed_mask_at(const Vec3& offset) const;
    SubsetMask strict_mask_at(const Vec3& offset) const;

  private:
    void add_candidate(const Vec3& offset, int grade);
    void enumerate();

    CanonicalShape shape_;
    std::vector<Vec3> pts_;
    simd::PointsSoA soa_;
    std::vector<CanonicalTranslate> candidates_;
    std::vector<RealizedSubset> realized_;
};

} // namespace conenet
