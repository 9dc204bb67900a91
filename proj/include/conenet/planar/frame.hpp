#pragma once

#include "conenet/geom/shapes.hpp"

namespace conenet {

// Planar working frame for a cone: e3 points against the internal ray, and
// tau projects along the ray onto the plane spanned by (e1, e2). All the
// paper-level planar structure is invariant under this choice of transversal
// plane.
struct Frame {
    Vec3 origin{0, 0, 0};
    Vec3 e1, e2, e3;

    Vec2 tau(const Vec3& x) const { return {dot(x - origin, e1), dot(x - origin, e2)}; }
    double height(const Vec3& x) const { return dot(x - origin, e3); }
};

inline Frame make_frame(const SimplicialCone& cone) {
    Frame f;
    f.origin = cone.apex;
    f.e3 = normalized(-cone.internal_ray);
    // stable orthogonal pair
    const Vec3 pick = std::fabs(f.e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    f.e1 = normalized(cross(pick, f.e3));
    f.e2 = cross(f.e3, f.e1);
    return f;
}

} // namespace conenet
