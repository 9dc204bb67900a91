#include "doctest.h"

#include "conenet/rng.hpp"
#include "conenet/simd/kernels.hpp"

using namespace conenet;
using namespace conenet::simd;

namespace {

PointsSoA random_points(Rng& rng, int n, double lo, double hi) {
    PointsSoA pts;
    for (int i = 0; i < n; ++i)
        pts.push({rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)});
    return pts;
}

std::vector<AffineForm> random_forms(Rng& rng, int nf) {
    std::vector<AffineForm> forms;
    for (int f = 0; f < nf; ++f) {
        Vec3 a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        forms.push_back({normalized(a), rng.uniform(-5, 5)});
    }
    return forms;
}

} // namespace

TEST_CASE("scalar and dispatched kernels agree bit for bit") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + int(rng.below(97));
        const int nf = 1 + int(rng.below(9));
        const auto pts = random_points(rng, n, -10, 10);
        const auto forms = random_forms(rng, nf);

        std::vector<double> ref(n), act(n);
        scalar_kernels().max_margins(pts.x.data(), pts.y.data(), pts.z.data(), n, forms.data(),
                                     forms.size(), ref.data());
        active_kernels().max_margins(pts.x.data(), pts.y.data(), pts.z.data(), n, forms.data(),
                                     forms.size(), act.data());
        for (int i = 0; i < n; ++i) CHECK(ref[i] == act[i]);

        std::vector<std::uint64_t> rs(mask_words(n)), rc(mask_words(n));
        std::vector<std::uint64_t> as(mask_words(n)), ac(mask_words(n));
        const double tau = 1e-9;
        scalar_kernels().containment_masks(pts.x.data(), pts.y.data(), pts.z.data(), n,
                                           forms.data(), forms.size(), tau, rs.data(), rc.data());
        active_kernels().containment_masks(pts.x.data(), pts.y.data(), pts.z.data(), n,
                                           forms.data(), forms.size(), tau, as.data(), ac.data());
        CHECK(rs == as);
        CHECK(rc == ac);
    }
}

TEST_CASE("masks match direct margin evaluation") {
    Rng rng(7);
    const int n = 70;
    const auto pts = random_points(rng, n, -4, 4);
    const auto forms = random_forms(rng, 4);
    const auto m = containment_masks(pts, forms, 1e-9);
    int strict = 0, closed = 0;
    for (int i = 0; i < n; ++i) {
        double mm = -1e300;
        for (const auto& f : forms) mm = std::max(mm, affine_eval(f.a, pts.at(i), f.b));
        const bool s = mm < -1e-9, c = mm <= 1e-9;
        CHECK(bool((m.strict[i >> 6] >> (i & 63)) & 1) == s);
        CHECK(bool((m.closed[i >> 6] >> (i & 63)) & 1) == c);
        strict += s;
        closed += c;
    }
    CHECK(m.strict_count == strict);
    CHECK(m.closed_count == closed);
}

TEST_CASE("strict containment implies closed containment") {
    Rng rng(11);
    const auto pts = random_points(rng, 64, -2, 2);
    const auto forms = random_forms(rng, 3);
    const auto m = containment_mask64(pts, forms, 1e-9);
    CHECK((m.strict & ~m.closed) == 0);
}

#if defined(__x86_64__)
TEST_CASE("avx2 variant is exercised when the host supports it") {
    if (!avx2_available()) return;
    CHECK(std::string(active_kernels().name) == "avx2");
}
#endif
