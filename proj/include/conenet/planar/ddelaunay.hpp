#pragma once

#include <span>
#include <vector>

#include "conenet/envelope/envelope.hpp"
#include "conenet/planar/frame.hpp"

namespace conenet {

// Delaunay-type triangulation of envelope points under the flattened cone:
// edges carry two-point empty-cone witnesses, bounded faces three-point
// ones. The planar embedding draws every edge as the two-chord polyline
// through the image of the minimal witness-cone apex; planarity, the
// triangle-face property, and the Euler relation are validated on build.
struct DDelaunay {
    std::vector<Vec3> pts;
    std::vector<Vec2> pos;

    struct Edge {
        int a, b;
        PinnedCone witness;
        std::vector<Vec2> polyline;
        std::array<int, 2> tri{-1, -1};
        bool bi_colored = false; // filled by the corridor stage
    };
    struct Tri {
        int a, b, c;
        PinnedCone witness;
        std::array<int, 3> edge{-1, -1, -1};
    };

    std::vector<Edge> edges;
    std::vector<Tri> tris;
    std::vector<int> outer_cycle;
    std::vector<std::vector<int>> vertex_edges; // sorted counterclockwise

    int edge_between(int a, int b) const {
        for (int e : vertex_edges[a])
            if (edges[e].a + edges[e].b - a == b) return e;
        return -1;
    }
};

DDelaunay d_delaunay(std::span<const Vec3> pts, const SimplicialCone& flat_cone, const Frame& frame);

// Outer-face cycle of the triangulation.
std::vector<int> cone_hull(const DDelaunay& dt);

// Proper-crossing test for two segments (shared endpoints do not count).
bool segments_cross(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1);

} // namespace conenet
