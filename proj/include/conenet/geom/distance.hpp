#pragma once

#include <span>

#include "conenet/vec.hpp"

namespace conenet {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);
double segment_segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1);
// Distance to a planar convex polygon given by its cyclically ordered vertices.
double point_polygon_distance(const Vec3& p, std::span<const Vec3> poly);

} // namespace conenet
