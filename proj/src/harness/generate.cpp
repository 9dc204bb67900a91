#include "conenet/harness/generate.hpp"

#include <cmath>

#include "conenet/rng.hpp"

namespace conenet {

InstanceSpec::Preset preset_from_name(const std::string& name) {
    if (name == "cube") return InstanceSpec::Preset::Cube;
    if (name == "tetrahedron" || name == "tet") return InstanceSpec::Preset::Tetrahedron;
    if (name == "random-convex" || name == "random") return InstanceSpec::Preset::RandomConvex;
    if (name == "l-shape" || name == "lshape") return InstanceSpec::Preset::LShape;
    throw ValidationError("unknown preset: " + name);
}

InstanceSpec::Dist dist_from_name(const std::string& name) {
    if (name == "uniform-box" || name == "uniform") return InstanceSpec::Dist::UniformBox;
    if (name == "clustered") return InstanceSpec::Dist::Clustered;
    if (name == "on-envelope") return InstanceSpec::Dist::OnEnvelope;
    throw ValidationError("unknown distribution: " + name);
}

SimplicialCone cube_bottom_vertex_cone() {
    return cone_from_rays({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1});
}

namespace {

ConvexPolytope random_convex(int v, Rng& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<Halfspace> hs;
        for (int i = 0; i < v; ++i) {
            Vec3 n;
            do {
                n = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            } while (norm(n) < 0.2 || norm(n) > 1.0);
            hs.push_back({normalized(n), 1.0});
        }
        try {
            ConvexPolytope T = polytope_from_halfspaces(hs);
            if (min_feature_separation(T) >= 0.05 * T.diameter()) return T;
        } catch (const DegeneratePolytope&) {
        }
    }
    throw DegeneratePolytope("random-convex preset failed to produce a valid polytope");
}

} // namespace

PolytopeFamily make_preset(InstanceSpec::Preset preset, int preset_v, std::uint64_t seed) {
    PolytopeFamily F;
    switch (preset) {
        case InstanceSpec::Preset::Cube:
            F.pieces.push_back(make_box({0, 0, 0}, {1, 1, 1}));
            break;
        case InstanceSpec::Preset::Tetrahedron:
            F.pieces.push_back(make_tetrahedron(1.0));
            break;
        case InstanceSpec::Preset::RandomConvex: {
            Rng rng(seed ^ 0xc0117e37u);
            F.pieces.push_back(random_convex(preset_v, rng));
            break;
        }
        case InstanceSpec::Preset::LShape:
            F.pieces.push_back(make_box({0, 0, 0}, {2, 1, 1}));
            F.pieces.push_back(make_box({0, 1, 0}, {1, 2, 1}));
            break;
    }
    return F;
}

HittingInstance generate(const InstanceSpec& spec) {
    HittingInstance inst;
    inst.seed = spec.seed;
    inst.family = make_preset(spec.preset, spec.preset_v, spec.seed);

    Rng root(spec.seed);
    Rng prng = root.split(1);
    switch (spec.dist) {
        case InstanceSpec::Dist::UniformBox:
            for (int i = 0; i < spec.n; ++i)
                inst.points.push_back(
                    {prng.uniform(0, 10), prng.uniform(0, 10), prng.uniform(0, 10)});
            break;
        case InstanceSpec::Dist::Clustered: {
            std::vector<Vec3> centers;
            const int k = 3;
            for (int c = 0; c < k; ++c)
                centers.push_back({prng.uniform(1, 9), prng.uniform(1, 9), prng.uniform(1, 9)});
            for (int i = 0; i < spec.n; ++i) {
                const Vec3 c = centers[prng.below(k)];
                Vec3 d;
                do {
                    d = {prng.uniform(-1, 1), prng.uniform(-1, 1), prng.uniform(-1, 1)};
                } while (norm(d) > 1.0);
                inst.points.push_back(c + d * 0.8);
            }
            break;
        }
        case InstanceSpec::Dist::OnEnvelope:
            // Transversal plane x + y + z = const: an antichain under the
            // coordinate order, so every point is a lower-envelope point for
            // the cube's bottom vertex cone.
            for (int i = 0; i < spec.n; ++i) {
                const double x = prng.uniform(0, 8), y = prng.uniform(0, 8);
                inst.points.push_back({x, y, 20.0 - x - y});
            }
            break;
    }

    Rng rrng = root.split(2);
    const Box3 bb = inst.family.bbox();
    for (int r = 0; r < spec.n_ranges && spec.n > 0; ++r) {
        const Vec3 anchor = inst.points[rrng.below(inst.points.size())];
        const auto& piece = inst.family.pieces[rrng.below(inst.family.pieces.size())];
        Vec3 x;
        do {
            x = {rrng.uniform(bb.lo.x, bb.hi.x), rrng.uniform(bb.lo.y, bb.hi.y),
                 rrng.uniform(bb.lo.z, bb.hi.z)};
        } while (!contains(piece, {0, 0, 0}, x, false));
        inst.ranges.push_back(anchor - x);
    }
    return inst;
}

} // namespace conenet
