#pragma once

#include <span>
#include <string>

#include "conenet/planar/corridor.hpp"

namespace conenet {

// Advisory diagnostics: the embedded triangulation over the tau plane with
// color classes, corridor triangles, colorless points, and net points.
void write_svg(const std::string& path, const DDelaunay& G, std::span<const int> vertex_color,
               const CorridorDecomposition& cd, std::span<const Vec2> colorless,
               std::span<const Vec2> net_points);

} // namespace conenet
