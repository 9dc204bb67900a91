#include "conenet/planar/cone_net.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "conenet/canonical.hpp"
#include "conenet/envelope/envelope.hpp"
#include "conenet/geom/perturb.hpp"
#include "conenet/harness/verify.hpp"
#include "conenet/planar/coloring.hpp"
#include "conenet/planar/corridor.hpp"
#include "conenet/planar/svg.hpp"

namespace conenet {

namespace {

ConeNetResult cone_net_attempt(std::span<const Vec3> Q, const SimplicialCone& C, int m,
                               std::uint64_t seed, const std::string& svg_path) {
    ConeNetResult res;
    const int n = int(Q.size());
    res.class_size = std::max(1, std::min(int(std::ceil(m / 6.0)), (m - 1) / 5));
    const int mbar = res.class_size;

    const SimplicialCone ctx[] = {C};
    const std::vector<Vec3> pts = perturb(Q, ctx, seed);

    const FlattenedCone F = flatten(C, pts);
    res.delta = F.delta;
    const EnvelopeData env = project_nonenvelope(pts, F);
    res.envelope_size = int(env.envelope.size());
    res.projected = int(env.projections.size());

    // Lifted working set P': envelope points as themselves, the rest as
    // their flattened-envelope images carrying the witness pins.
    struct Lift {
        Vec3 pos;
        int orig;
        std::array<int, 3> pins{};
        int n_pins = 0;
    };
    std::vector<Lift> lifted;
    for (int i : env.envelope) lifted.push_back({pts[i], i, {}, 0});
    for (const auto& proj : env.projections)
        lifted.push_back({proj.image, proj.point, proj.pins, proj.n_pins});
    std::vector<Vec3> lifted_pts;
    for (const auto& l : lifted) lifted_pts.push_back(l.pos);

    const Frame frame = make_frame(F.flat);
    const auto hull = limit_hull(lifted_pts, F.flat);
    const Coloring col = color_points(lifted_pts, F.flat, mbar, hull);
    res.k = col.k();

    // Triangulation of the colored points only.
    std::vector<int> colored_ids;
    for (int i = 0; i < int(lifted_pts.size()); ++i)
        if (col.color[i] >= 0) colored_ids.push_back(i);
    std::vector<Vec3> colored_pts;
    std::vector<int> vertex_color;
    for (int i : colored_ids) {
        colored_pts.push_back(lifted_pts[i]);
        vertex_color.push_back(col.color[i]);
    }
    std::vector<int> colorless_ids;
    for (int i = 0; i < int(lifted_pts.size()); ++i)
        if (col.color[i] < 0) colorless_ids.push_back(i);
    std::vector<Vec3> colorless_pts;
    for (int i : colorless_ids) colorless_pts.push_back(lifted_pts[i]);

    std::set<int> net_lifted;
    CorridorDecomposition cd;
    DDelaunay G;
    if (!colored_ids.empty()) {
        G = d_delaunay(colored_pts, F.flat, frame);
        cd = build_corridors(G, vertex_color, colorless_pts, F.flat, mbar);
        res.corridor_count = int(cd.chains.size());
        res.subcorridor_count = int(cd.subs.size());

        for (const auto& sc : cd.subs) {
            for (int v : sc.corners) net_lifted.insert(colored_ids[v]);
            if (sc.over_full)
                for (int t : sc.tris) {
                    net_lifted.insert(colored_ids[G.tris[t].a]);
                    net_lifted.insert(colored_ids[G.tris[t].b]);
                    net_lifted.insert(colored_ids[G.tris[t].c]);
                    ++res.safeguard_count;
                }
        }
        for (int t : cd.safeguard_tris) {
            net_lifted.insert(colored_ids[G.tris[t].a]);
            net_lifted.insert(colored_ids[G.tris[t].b]);
            net_lifted.insert(colored_ids[G.tris[t].c]);
            ++res.safeguard_count;
        }
        for (int ci : cd.unlocated) {
            net_lifted.insert(colorless_ids[ci]);
            ++res.unlocated;
        }
    }

    if (!svg_path.empty() && !colored_ids.empty()) {
        std::vector<Vec2> colorless_pos, net_pos;
        for (const auto& p : colorless_pts) colorless_pos.push_back(frame.tau(p));
        for (int i : net_lifted) net_pos.push_back(frame.tau(lifted_pts[i]));
        write_svg(svg_path, G, vertex_color, cd, colorless_pos, net_pos);
    }

    // Lift the planar net back: projected points expand to their pins.
    std::set<int> net;
    for (int li : net_lifted) {
        const auto& l = lifted[li];
        if (l.n_pins == 0) net.insert(l.orig);
        else
            for (int k = 0; k < l.n_pins; ++k) net.insert(l.pins[k]);
    }
    res.net.assign(net.begin(), net.end());

    // Oracle gate: no canonical translate may hold m points and miss the net.
    SubsetMask net_mask;
    for (int i : res.net) net_mask.set(i);
    const CanonicalTranslates ct(CanonicalShape::from_cone(C), pts);
    const OracleResult check = verify_net_threshold(ct, m, net_mask);
    if (!check.ok)
        throw NetVerificationFailed("cone net misses a canonical translate with " +
                                    std::to_string(check.count) + " points");

    const double subs_cap =
        std::max(double(res.subcorridor_count),
                 std::max(0.0, 3.0 * res.k - 6.0) + std::ceil(double(n) / mbar));
    res.bound = 3.0 * (4.0 * subs_cap + 3.0 * res.safeguard_count + res.unlocated);
    if (double(res.net.size()) > res.bound)
        throw InvariantError("cone net exceeds its own size bound");
    return res;
}

} // namespace

ConeNetResult cone_net(std::span<const Vec3> Q, const SimplicialCone& C, int m,
                       std::uint64_t seed, const std::string& svg_path) {
    if (m < 1) throw InvalidEpsilon("cone net threshold must be at least 1");
    C.validate();
    ConeNetResult res;
    const int n = int(Q.size());
    if (n < m) return res; // no translate can reach the threshold

    // The corridor counting argument needs class sizes with 5*class < m;
    // below m = 6 the O(1/eps) budget already covers taking every point.
    if (m <= 5) {
        res.trivial_all = true;
        for (int i = 0; i < n; ++i) res.net.push_back(i);
        res.bound = 96.0 * double(n) / double(m);
        res.class_size = 1;
        return res;
    }

    std::uint64_t attempt_seed = seed;
    for (int attempt = 0; attempt < 8; ++attempt, attempt_seed += 0x9e3779b9) {
        try {
            return cone_net_attempt(Q, C, m, attempt_seed, svg_path);
        } catch (const PerturbationFailed&) {
            throw;
        } catch (const NetVerificationFailed&) {
            if (attempt == 7) throw;
        } catch (const InvariantError&) {
            if (attempt == 7) throw;
        }
    }
    throw NonTermination("cone_net retries exhausted"); // unreachable
}

} // namespace conenet
