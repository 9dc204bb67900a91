#pragma once

#include <span>
#include <vector>

#include "conenet/canonical.hpp"
#include "conenet/geom/shapes.hpp"

namespace conenet {

// Disjoint color classes, each realized exactly by some cone translate that
// avoids every previously colored point. Phase 1 bites hull points off,
// phase 2 extends to a maximal collection; classes are exact-size except for
// explicitly flagged remainder bites.
struct Coloring {
    int m = 1;
    std::vector<int> color; // per point, -1 for colorless
    struct ColorClass {
        SubsetMask members;
        Vec3 defining_offset; // apex of its defining translate D_i
        bool exact = true;
        bool phase1 = false;
    };
    std::vector<ColorClass> classes;
    SubsetMask colored;

    int k() const { return int(classes.size()); }
};

// Hull membership used by phase 1: the point carries an empty halfspace- or
// wedge-limit object (the "cones of the lower envelope with at most two
// boundary points").
std::vector<int> limit_hull(std::span<const Vec3> pts, const SimplicialCone& cone);

Coloring color_points(std::span<const Vec3> pts, const SimplicialCone& flat_cone, int m,
                      std::span<const int> hull);

} // namespace conenet
