#pragma once

#include <span>
#include <vector>

#include "conenet/planar/ddelaunay.hpp"

namespace conenet {

// Maximal chains of bi-colored triangles glued along bi-colored edges.
// Cyclic chains are cut once so every corridor has two ends.
std::vector<std::vector<int>> corridors(const DDelaunay& G, std::span<const int> vertex_color);

struct SubCorridor {
    std::vector<int> tris;     // consecutive slice of one corridor chain
    std::vector<int> corners;  // endpoint vertices of the two end edges (<= 4)
    int colorless_inside = 0;
    bool over_full = false;    // a single triangle exceeded the threshold alone
};

// Greedy minimum split of one corridor so that each slice carries at most m
// colorless points; tri_colorless holds the per-triangle counts.
std::vector<SubCorridor> subdivide(const DDelaunay& G, std::span<const int> vertex_color,
                                   const std::vector<int>& chain,
                                   std::span<const int> tri_colorless, int m);

struct CorridorDecomposition {
    std::vector<std::vector<int>> chains;
    std::vector<SubCorridor> subs;
    std::vector<int> tri_colorless;   // per triangle of G
    std::vector<int> safeguard_tris;  // tri-colored triangles over the threshold
    std::vector<int> unlocated;       // colorless ids located in no bounded triangle
};

CorridorDecomposition build_corridors(const DDelaunay& G, std::span<const int> vertex_color,
                                      std::span<const Vec3> colorless_pts,
                                      const SimplicialCone& flat_cone, int m);

} // namespace conenet
