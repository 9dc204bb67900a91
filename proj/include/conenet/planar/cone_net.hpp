#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conenet/geom/shapes.hpp"

namespace conenet {

// Epsilon-net for translates of one simplicial cone at an absolute
// threshold: every translate holding at least m of the input points
// contains a net point. The guarantee is checked against the canonical
// translate oracle before returning; a violator raises
// NetVerificationFailed instead of a silently wrong net.
struct ConeNetResult {
    std::vector<int> net;    // indices into the input points
    double bound = 0.0;      // size bound the construction proves
    // diagnostics
    int envelope_size = 0;
    int projected = 0;
    int class_size = 0;      // the per-class threshold actually used
    int k = 0;               // color classes
    int corridor_count = 0;
    int subcorridor_count = 0;
    int safeguard_count = 0; // over-full and tri-colored safeguard triangles
    int unlocated = 0;
    double delta = 0.0;      // stable flattening angle
    bool trivial_all = false; // small-threshold path returned all points
};

ConeNetResult cone_net(std::span<const Vec3> Q, const SimplicialCone& C, int m,
                       std::uint64_t seed, const std::string& svg_path = {});

} // namespace conenet
