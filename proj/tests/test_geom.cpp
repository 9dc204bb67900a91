#include "doctest.h"

#include <cmath>
#include <set>

#include "conenet/geom/grid.hpp"
#include "conenet/geom/perturb.hpp"
#include "conenet/geom/polytope.hpp"
#include "conenet/rng.hpp"

using namespace conenet;

namespace {

// Cone of the cube corner at `apex`, opening toward the negative octant.
SimplicialCone corner_cone(const Vec3& apex = {0, 0, 0}) {
    return cone_from_rays(apex, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1});
}

} // namespace

TEST_CASE("containment of the unit cube") {
    const auto cube = make_box({0, 0, 0}, {1, 1, 1});
    CHECK(contains(cube, {0, 0, 0}, {0.5, 0.5, 0.5}, true));
    CHECK(contains(cube, {0, 0, 0}, {0.5, 0.5, 0.5}, false));
    CHECK_FALSE(contains(cube, {2, 0, 0}, {0.5, 0.5, 0.5}, true));
}

TEST_CASE("cone boundary points are closed-only") {
    const auto cone = corner_cone({1, 1, 1});
    const Vec3 boundary{1.0, 0.4, 0.2}; // on the x-face of the translate at 0
    CHECK(contains(cone, {0, 0, 0}, boundary, true));
    CHECK_FALSE(contains(cone, {0, 0, 0}, boundary, false));
    // open containment implies closed containment on random probes
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec3 p{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (contains(cone, {0, 0, 0}, p, false)) CHECK(contains(cone, {0, 0, 0}, p, true));
    }
}

TEST_CASE("feature separation of the presets") {
    const auto cube = make_box({0, 0, 0}, {1, 1, 1});
    CHECK(min_feature_separation(cube) == doctest::Approx(1.0).epsilon(1e-12));

    const auto cube2 = make_box({0, 0, 0}, {2, 2, 2});
    CHECK(min_feature_separation(cube2) == doctest::Approx(2.0).epsilon(1e-12));

    // Regular tetrahedron, edge 1: opposite edges are 1/sqrt(2) apart, which
    // beats both the unit vertex spacing and the vertex-face height sqrt(2/3).
    const auto tet = make_tetrahedron(1.0);
    CHECK(min_feature_separation(tet) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));

    CHECK_THROWS_AS((void)make_box({0, 0, 0}, {1, 1, 0}), DegeneratePolytope);
}

TEST_CASE("grid dimensions and the cell cap") {
    const auto cube = make_box({0, 0, 0}, {1, 1, 1});
    Box3 bbox;
    bbox.expand({0, 0, 0});
    bbox.expand({10, 10, 10});
    const Grid g = build_grid(cube, bbox);
    CHECK(g.h == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(g.t_bound == doctest::Approx(512.0)); // ceil(diam/h + 2)^3 = 8^3

    const auto cube2 = make_box({0, 0, 0}, {2, 2, 2});
    const Grid g2 = build_grid(cube2, bbox);
    CHECK(g2.h == doctest::Approx(2.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(g2.t_bound == doctest::Approx(512.0)); // scale-invariant
}

TEST_CASE("no grid cell ever holds two vertices of a translate") {
    for (const auto& T : {make_box({0, 0, 0}, {1, 1, 1}), make_tetrahedron(1.0)}) {
        Box3 bbox;
        bbox.expand({0, 0, 0});
        bbox.expand({10, 10, 10});
        const Grid g = build_grid(T, bbox);
        Rng rng(99);
        for (int it = 0; it < 1000; ++it) {
            const Vec3 t{rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)};
            std::set<std::int64_t> cells;
            for (const auto& v : T.vertices) CHECK(cells.insert(g.flat_index(g.cell_of(v + t))).second);
        }
    }
}

TEST_CASE("polytope from random halfspaces validates") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Halfspace> hs;
        for (int i = 0; i < 6; ++i) {
            Vec3 n{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            while (norm(n) < 0.2) n = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            hs.push_back({normalized(n), 1.0});
        }
        try {
            const auto T = polytope_from_halfspaces(hs);
            CHECK(T.vertices.size() >= 4);
            CHECK(contains(T, {0, 0, 0}, {0, 0, 0}, false)); // origin inside by construction
        } catch (const DegeneratePolytope&) {
            // thin random polytopes may fail validation; that is the contract
        }
    }
}

TEST_CASE("perturbation fixes coplanar cone contacts and keeps good inputs") {
    const auto cone = corner_cone();
    const SimplicialCone cones[] = {cone};

    SUBCASE("already non-degenerate input is unchanged up to the bound") {
        std::vector<Vec3> pts = {{0.1, 0.7, 0.3}, {0.9, 0.2, 0.8}, {0.4, 0.5, 0.6}};
        const auto out = perturb(pts, cones, 1);
        REQUIRE(out.size() == pts.size());
        Box3 bb;
        for (const auto& p : pts) bb.expand(p);
        for (std::size_t i = 0; i < pts.size(); ++i)
            CHECK(dist(out[i], pts[i]) < 1e-9 * std::max(bb.diameter(), 1.0) * 2.0);
        CHECK(nondegenerate_for_cones(out, cones));
    }

    SUBCASE("four points on one cone boundary get separated") {
        // Two points on the x-face and two on the y-face of the translate
        // with apex (1, 1, 1): a four-contact coincidence.
        std::vector<Vec3> pts = {{1.0, 0.3, 0.7}, {1.0, 0.6, 0.2}, {0.5, 1.0, 0.8}, {0.2, 1.0, 0.3}};
        CHECK_FALSE(nondegenerate_for_cones(pts, cones));
        const auto out = perturb(pts, cones, 7);
        CHECK(nondegenerate_for_cones(out, cones));
    }

    SUBCASE("empty input") { CHECK(perturb({}, cones, 1).empty()); }
}
