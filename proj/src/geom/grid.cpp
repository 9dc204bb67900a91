#include "conenet/geom/grid.hpp"

#include <cmath>

namespace conenet {

Grid build_grid(const ConvexPolytope& T, const Box3& points_bbox) {
    const double sep = min_feature_separation(T);
    const double diam = T.diameter();
    Grid g;
    g.h = sep / (2.0 * std::sqrt(3.0));
    Box3 cover = points_bbox;
    if (!cover.valid()) cover = {{0, 0, 0}, {0, 0, 0}};
    cover.expand(diam);
    g.origin = {std::floor(cover.lo.x / g.h) * g.h, std::floor(cover.lo.y / g.h) * g.h,
                std::floor(cover.lo.z / g.h) * g.h};
    g.nx = std::int64_t(std::ceil((cover.hi.x - g.origin.x) / g.h)) + 1;
    g.ny = std::int64_t(std::ceil((cover.hi.y - g.origin.y) / g.h)) + 1;
    g.nz = std::int64_t(std::ceil((cover.hi.z - g.origin.z) / g.h)) + 1;
    const double per_axis = std::ceil(diam / g.h + 2.0);
    g.t_bound = per_axis * per_axis * per_axis;
    return g;
}

} // namespace conenet
