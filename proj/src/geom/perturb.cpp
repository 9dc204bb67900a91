#include "conenet/geom/perturb.hpp"

#include "conenet/rng.hpp"

namespace conenet {

std::vector<Vec3> perturb(std::span<const Vec3> pts, std::span<const SimplicialCone> cones,
                          std::uint64_t seed) {
    std::vector<Vec3> out(pts.begin(), pts.end());
    if (out.empty()) return out;
    if (nondegenerate_for_cones(out, cones)) return out;

    Box3 bb;
    for (const auto& p : pts) bb.expand(p);
    const double diam = std::max(bb.diameter(), 1.0);
    const double mag = 0.9e-9 * diam;

    Rng rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Vec3 d{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            out[i] = pts[i] + d * mag;
        }
        if (nondegenerate_for_cones(out, cones)) return out;
    }
    throw PerturbationFailed("input still degenerate after 32 perturbation attempts");
}

} // namespace conenet
