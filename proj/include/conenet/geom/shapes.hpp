#pragma once

#include <array>
#include <span>
#include <vector>

#include "conenet/common.hpp"
#include "conenet/simd/kernels.hpp"
#include "conenet/vec.hpp"

namespace conenet {

// Membership is normal·x <= offset with a unit normal.
struct Halfspace {
    Vec3 normal;
    double offset = 0.0;

    // Signed margin: negative inside, zero on the plane, positive outside.
    double margin(const Vec3& p) const { return affine_eval(normal, p, offset); }
};

struct Translate {
    Vec3 offset;
};

enum class Side { Inside, On, Outside };

inline Side classify_margin(double m, double tau = kGeoTol) {
    if (m < -tau) return Side::Inside;
    if (m > tau) return Side::Outside;
    return Side::On;
}

// Cone bounded by three planes through the apex, opening along internal_ray.
struct SimplicialCone {
    Vec3 apex;
    std::array<Halfspace, 3> faces;
    Vec3 internal_ray; // unit, strictly interior: faces[l].normal · internal_ray < 0

    // Margins for the translate whose apex sits at apex_pos.
    std::array<simd::AffineForm, 3> forms_at(const Vec3& apex_pos) const {
        std::array<simd::AffineForm, 3> f;
        for (int l = 0; l < 3; ++l) f[l] = {faces[l].normal, dot(faces[l].normal, apex_pos)};
        return f;
    }
    double max_margin(const Vec3& apex_pos, const Vec3& p) const {
        double m = -1e300;
        for (const auto& hs : faces) m = std::max(m, affine_eval(hs.normal, p, dot(hs.normal, apex_pos)));
        return m;
    }
    void validate() const;
};

// Constructs a simplicial cone from three extreme ray directions at an apex.
SimplicialCone cone_from_rays(const Vec3& apex, const Vec3& r0, const Vec3& r1, const Vec3& r2);

inline double halfspace_margin(const Halfspace& h, const Vec3& translate, const Vec3& p) {
    return affine_eval(h.normal, p, h.offset + dot(h.normal, translate));
}

inline bool contains(const Halfspace& h, const Vec3& translate, const Vec3& p, bool closed) {
    const Side s = classify_margin(halfspace_margin(h, translate, p));
    return closed ? s != Side::Outside : s == Side::Inside;
}

inline bool contains(const SimplicialCone& c, const Vec3& translate, const Vec3& p, bool closed) {
    const Side s = classify_margin(c.max_margin(c.apex + translate, p));
    return closed ? s != Side::Outside : s == Side::Inside;
}

} // namespace conenet
