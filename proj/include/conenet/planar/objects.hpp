#pragma once

#include <span>
#include <vector>

#include "conenet/envelope/envelope.hpp"
#include "conenet/planar/frame.hpp"

namespace conenet {

// Exact polygonal trace of an object boundary in the tau plane: the cone
// boundary intersected with the flattened lower envelope of the working
// points, clipped to the working box. Box-clip artifacts are not part of the
// trace; the paper's objects are unbounded and the box only bounds the
// computation.
struct BoundaryTrace {
    std::vector<std::array<Vec2, 2>> segments;
};

BoundaryTrace trace_object_boundary(const Vec3& apex_pos, std::span<const Vec3> pts,
                                    const SimplicialCone& flat_cone, const Frame& frame,
                                    const Box3& clip);

// Transversal crossings of two traced boundaries; non-piercing objects admit
// at most two.
int crossing_count(const BoundaryTrace& a, const BoundaryTrace& b);

int crossing_count(const Vec3& apex_a, const Vec3& apex_b, std::span<const Vec3> pts,
                   const SimplicialCone& flat_cone, const Frame& frame, const Box3& clip);

} // namespace conenet
