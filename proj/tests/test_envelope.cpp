#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "conenet/envelope/envelope.hpp"
#include "conenet/geom/perturb.hpp"
#include "conenet/rng.hpp"

using namespace conenet;

namespace {

SimplicialCone corner_cone(const Vec3& apex = {0, 0, 0}) {
    return cone_from_rays(apex, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1});
}

std::vector<Vec3> random_points(Rng& rng, int n, double lo = 0.0, double hi = 10.0) {
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)});
    return pts;
}

int distinct_pins(const PinnedCone& pc) {
    std::set<int> s;
    for (int i = 0; i < pc.n_pins; ++i) s.insert(pc.pins[i].point);
    return int(s.size());
}

// Random translate of the cone whose closed region contains x.
Vec3 random_containing_apex(Rng& rng, const SimplicialCone& C, const Vec3& x) {
    std::array<Vec3, 3> rays;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        Vec3 r = cross(C.faces[j].normal, C.faces[k].normal);
        if (dot(r, C.faces[i].normal) > 0) r = -r;
        rays[i] = normalized(r);
    }
    const Vec3 dir = rays[0] * rng.uniform(0, 3) + rays[1] * rng.uniform(0, 3) + rays[2] * rng.uniform(0, 3);
    return x - dir; // apex placed so that x = apex + dir lies in the cone
}

} // namespace

TEST_CASE("envelope membership basics") {
    const auto C = corner_cone();

    SUBCASE("single point") {
        std::vector<Vec3> pts = {{1, 2, 3}};
        CHECK(envelope_points(pts, C) == std::vector<int>{0});
    }
    SUBCASE("dominated point hides the one above") {
        std::vector<Vec3> pts = {{1.0, 1.0, 1.0}, {0.9, 0.89, 0.91}};
        CHECK(envelope_points(pts, C) == std::vector<int>{1});
    }
    SUBCASE("transversal plane keeps every point") {
        Rng rng(13);
        std::vector<Vec3> pts;
        for (int i = 0; i < 12; ++i) {
            const double x = rng.uniform(0, 5), y = rng.uniform(0, 5);
            pts.push_back({x, y, 12.0 - x - y});
        }
        CHECK(envelope_points(pts, C).size() == pts.size());
    }
}

TEST_CASE("canonical empty cones on tiny sets") {
    const auto C = corner_cone();

    SUBCASE("one point yields one halfspace limit per facet") {
        std::vector<Vec3> pts = {{1, 2, 3}};
        const auto cones = canonical_empty_cones(pts, C);
        int grade1 = 0;
        for (const auto& pc : cones) grade1 += pc.grade == 1;
        CHECK(grade1 == 3);
        for (const auto& pc : cones) CHECK(pc.strict_mask.none());
    }

    SUBCASE("three generic points give exactly one three-pin cone") {
        std::vector<Vec3> pts = {{2.0, 5.0, 6.5}, {5.5, 2.5, 6.0}, {5.0, 5.5, 2.0}};
        const auto cones = canonical_empty_cones(pts, C);
        int three_pin = 0;
        for (const auto& pc : cones) three_pin += distinct_pins(pc) == 3;
        CHECK(three_pin == 1);
    }

    SUBCASE("a dominated pair admits no two-pin cone") {
        std::vector<Vec3> pts = {{1.0, 1.0, 1.0}, {0.5, 0.6, 0.55}};
        const ConeOps ops(C);
        const simd::PointsSoA soa(pts);
        CHECK_FALSE(dd_edge_exists(ops, pts, soa, 0, 1, nullptr));
        const auto cones = canonical_empty_cones(pts, C);
        for (const auto& pc : cones) CHECK(distinct_pins(pc) <= 1);
    }
}

TEST_CASE("every reported pinned cone is genuinely empty and pinned") {
    Rng rng(17);
    const auto C = corner_cone();
    const SimplicialCone ctx[] = {C};
    const auto pts = perturb(random_points(rng, 12), ctx, 18);
    const auto cones = canonical_empty_cones(pts, C);
    CHECK(cones.size() > 0);
    for (const auto& pc : cones) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            CHECK_FALSE(contains(C, pc.apex_pos - C.apex, pts[i], false));
        for (int k = 0; k < pc.n_pins; ++k) {
            const auto& pin = pc.pins[k];
            CHECK(std::fabs(dot(C.faces[pin.face].normal, pts[pin.point] - pc.apex_pos)) < 1e-6);
            CHECK(contains(C, pc.apex_pos - C.apex, pts[pin.point], true));
        }
    }
}

TEST_CASE("flattening stabilizes and rejects degenerate input") {
    const auto C = corner_cone();

    SUBCASE("three points accept the first delta") {
        std::vector<Vec3> pts = {{2.0, 5.0, 6.5}, {5.5, 2.5, 6.0}, {5.0, 5.5, 2.0}};
        const auto F = flatten(C, pts);
        CHECK(F.delta == doctest::Approx(1e-4));
        for (int l = 0; l < 3; ++l)
            CHECK(dot(F.flat.faces[l].normal, C.internal_ray) < 0);
    }

    SUBCASE("ten random points give a stable edge set") {
        Rng rng(23);
        const SimplicialCone ctx[] = {C};
        const auto pts = perturb(random_points(rng, 10), ctx, 24);
        const auto F = flatten(C, pts);
        CHECK(F.delta > 0);
        CHECK(F.delta <= 1e-4);
    }

    SUBCASE("four co-boundary points fail") {
        std::vector<Vec3> pts = {{1.0, 0.3, 0.7}, {1.0, 0.6, 0.2}, {0.5, 1.0, 0.8}, {0.2, 1.0, 0.3}};
        CHECK_THROWS_AS((void)flatten(C, pts), FlattenFailed);
    }
}

TEST_CASE("projection onto the flattened envelope") {
    const auto C = corner_cone();

    SUBCASE("two-point instance projects onto the one-pin cone at q") {
        std::vector<Vec3> pts = {{1.0, 1.0, 1.0}, {0.5, 0.6, 0.55}};
        const auto F = flatten(C, pts);
        const auto env = project_nonenvelope(pts, F);
        REQUIRE(env.envelope == std::vector<int>{1});
        REQUIRE(env.projections.size() == 1);
        const auto& proj = env.projections[0];
        CHECK(proj.point == 0);
        CHECK(proj.n_pins == 1);
        CHECK(proj.pins[0] == 1);
        // p' sits on the boundary of the flattened cone family pinned at q.
        const ConeOps flat_ops(F.flat);
        double max_m = -1e300;
        for (int l = 0; l < 3; ++l) max_m = std::max(max_m, flat_ops.margin(l, proj.image, pts[1]));
        CHECK(std::fabs(max_m) < 1e-6);
    }

    SUBCASE("random instance: containing translates hit a witness pin") {
        Rng rng(31);
        const SimplicialCone ctx[] = {corner_cone()};
        const auto pts = perturb(random_points(rng, 10), ctx, 32);
        const auto F = flatten(C, pts);
        const auto env = project_nonenvelope(pts, F);
        CHECK(env.envelope.size() + env.projections.size() == pts.size());
        for (const auto& proj : env.projections) {
            for (int it = 0; it < 1000; ++it) {
                const Vec3 apex = random_containing_apex(rng, C, proj.image);
                REQUIRE(contains(C, apex - C.apex, proj.image, true));
                bool hit = false;
                for (int k = 0; k < proj.n_pins && !hit; ++k)
                    hit = contains(C, apex - C.apex, pts[proj.pins[k]], true);
                CHECK(hit);
            }
        }
    }
}
