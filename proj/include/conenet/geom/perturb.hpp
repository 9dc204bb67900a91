#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "conenet/geom/shapes.hpp"

namespace conenet {

// True when no canonical translate of any of the cones has more than three
// points of P on its boundary (the working non-degeneracy condition).
bool nondegenerate_for_cones(std::span<const Vec3> pts, std::span<const SimplicialCone> cones);

// Index-stable perturbation: each point moves by < 1e-9 * bbox diameter until
// the set validates against every working cone. Throws PerturbationFailed
// after 32 attempts.
std::vector<Vec3> perturb(std::span<const Vec3> pts, std::span<const SimplicialCone> cones,
                          std::uint64_t seed);

} // namespace conenet
