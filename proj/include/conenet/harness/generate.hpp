#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conenet/decompose/family.hpp"

namespace conenet {

struct HittingInstance {
    PolytopeFamily family;
    std::vector<Vec3> points;
    std::vector<Vec3> ranges; // translate offsets; each contains >= 1 point
    std::uint64_t seed = 0;
};

struct InstanceSpec {
    std::uint64_t seed = 0;
    int n = 0;
    enum class Dist { UniformBox, Clustered, OnEnvelope } dist = Dist::UniformBox;
    enum class Preset { Cube, Tetrahedron, RandomConvex, LShape } preset = Preset::Cube;
    int preset_v = 6; // facet directions for RandomConvex
    int n_ranges = 0;
};

InstanceSpec::Preset preset_from_name(const std::string& name);
InstanceSpec::Dist dist_from_name(const std::string& name);

PolytopeFamily make_preset(InstanceSpec::Preset preset, int preset_v, std::uint64_t seed);

// Deterministic: identical spec -> identical instance.
HittingInstance generate(const InstanceSpec& spec);

// The cone used by the on-envelope construction: tangent cone of the unit
// cube at its bottom vertex, canonically oriented.
SimplicialCone cube_bottom_vertex_cone();

} // namespace conenet
