#pragma once

#include <array>
#include <cstdint>

#include "conenet/geom/polytope.hpp"

namespace conenet {

// Cubical grid fine enough that any translate of the polytope it was built
// for has at most one vertex per cell: h * sqrt(3) < min feature separation.
struct Grid {
    Vec3 origin;
    double h = 0.0;
    std::int64_t nx = 0, ny = 0, nz = 0;
    double t_bound = 0.0; // cap on cells one translate can intersect

    std::array<std::int64_t, 3> cell_of(const Vec3& p) const {
        return {coord(p.x, origin.x), coord(p.y, origin.y), coord(p.z, origin.z)};
    }
    std::int64_t flat_index(const std::array<std::int64_t, 3>& c) const {
        return (c[0] * ny + c[1]) * nz + c[2];
    }
    Vec3 cell_lo(const std::array<std::int64_t, 3>& c) const {
        return {origin.x + double(c[0]) * h, origin.y + double(c[1]) * h, origin.z + double(c[2]) * h};
    }

  private:
    // Lexicographically smallest closed cell containing the coordinate.
    std::int64_t coord(double v, double o) const {
        return std::int64_t(std::ceil((v - o) / h)) - 1;
    }
};

Grid build_grid(const ConvexPolytope& T, const Box3& points_bbox);

} // namespace conenet
