#include "conenet/planar/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conenet/envelope/envelope.hpp"

namespace conenet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<int> limit_hull(std::span<const Vec3> pts, const SimplicialCone& cone) {
    const ConeOps ops(cone);
    const int n = int(pts.size());
    std::vector<int> hull;
    for (int h = 0; h < n; ++h) {
        bool on_hull = false;
        // empty halfspace limit
        for (int i = 0; i < 3 && !on_hull; ++i) {
            bool empty = true;
            for (int q = 0; q < n && empty; ++q)
                if (q != h && dot(ops.n[i], pts[q] - pts[h]) < -kGeoTol) empty = false;
            on_hull = empty;
        }
        // empty wedge limit anchored on face i
        for (int i = 0; i < 3 && !on_hull; ++i)
            for (int j = 0; j < 3 && !on_hull; ++j) {
                if (i == j) continue;
                double beta_cap = kInf;
                for (int q = 0; q < n; ++q) {
                    if (q == h) continue;
                    if (dot(ops.n[i], pts[q] - pts[h]) < -kGeoTol)
                        beta_cap = std::min(beta_cap, dot(ops.n[j], pts[q]));
                }
                on_hull = dot(ops.n[j], pts[h]) <= beta_cap + kGeoTol;
            }
        if (on_hull) hull.push_back(h);
    }
    return hull;
}

namespace {

struct Engine {
    const std::vector<Vec3>& pts;
    const ConeOps& ops;
    const CanonicalTranslates& ct;
    Coloring& out;
    int m;

    bool colored(int p) const { return out.colored.test(p); }

    // Shrinks the translate at `offset` along the internal ray until exactly
    // `target` of `members` remain; must_keep (if >= 0) has to survive.
    // Returns false when the shrink cannot satisfy the requirements.
    bool shrink_to(Vec3 offset, SubsetMask members, int target, int must_keep, Vec3& final_offset,
                   SubsetMask& final_members) const {
        std::vector<std::pair<double, int>> exits;
        members.for_each([&](int p) { exits.push_back({ops.shrink_exit(offset, pts[p]), p}); });
        std::sort(exits.begin(), exits.end());
        const int drop = int(exits.size()) - target;
        if (drop < 0) return false;
        if (drop == 0) {
            final_offset = offset;
            final_members = members;
            return true;
        }
        for (int i = 0; i < drop; ++i)
            if (exits[i].second == must_keep) return false;
        const double lam = 0.5 * (exits[drop - 1].first + exits[drop].first);
        if (!(exits[drop].first - exits[drop - 1].first > 1e-12)) return false;
        final_offset = offset + ops.cone->internal_ray * lam;
        SubsetMask expect;
        for (int i = drop; i < int(exits.size()); ++i) expect.set(exits[i].second);
        // recount: the shrunk translate must realize the subset exactly
        const SubsetMask closed = ct.closed_mask_at(final_offset);
        if (!(closed == expect)) return false;
        final_members = expect;
        return true;
    }

    bool try_bite(const RealizedSubset& r, int must_keep, bool flag_phase1) {
        if (r.members.intersects(out.colored)) return false;
        if (must_keep >= 0 && !r.members.test(must_keep)) return false;
        if (r.members.count() < m) return false;
        Vec3 base;
        try {
            base = ct.realize_offset(r);
        } catch (const InvariantError&) {
            return false;
        }
        Vec3 off;
        SubsetMask members;
        if (!shrink_to(base, r.members, m, must_keep, off, members)) return false;
        commit(members, off, true, flag_phase1);
        return true;
    }

    void commit(const SubsetMask& members, const Vec3& offset, bool exact, bool phase1) {
        Coloring::ColorClass cls;
        cls.members = members;
        cls.defining_offset = offset;
        cls.exact = exact;
        cls.phase1 = phase1;
        members.for_each([&](int p) { out.color[p] = int(out.classes.size()); });
        out.colored |= members;
        out.classes.push_back(cls);
    }

    // Last-resort bite: sweep a halfspace- or wedge-limit family anchored at
    // the hull point, capturing points in entry order until the class size
    // or the first colored point. Always succeeds for a limit-hull point.
    bool sweep_bite(int h) {
        const int n = int(pts.size());
        // halfspace sweeps
        for (int i = 0; i < 3; ++i) {
            bool anchored = true;
            for (int q = 0; q < n && anchored; ++q)
                if (q != h && dot(ops.n[i], pts[q] - pts[h]) < -kGeoTol) anchored = false;
            if (!anchored) continue;
            std::vector<std::pair<double, int>> order;
            for (int q = 0; q < n; ++q) order.push_back({dot(ops.n[i], pts[q]), q});
            std::sort(order.begin(), order.end());
            SubsetMask members;
            double level = order[0].first;
            int taken = 0;
            for (const auto& [val, q] : order) {
                if (colored(q)) break;
                members.set(q);
                level = val;
                if (++taken == m) break;
            }
            if (taken == 0 || !members.test(h)) continue;
            // realize: far cone with face i at the sweep level plus a margin
            const double next = taken < n ? order[taken].first : level + 1.0;
            if (!(next - level > 1e-12)) continue;
            const Vec3 off = far_halfspace_offset(i, 0.5 * (level + next));
            const SubsetMask closed = ct.closed_mask_at(off);
            if (!(closed == members)) continue;
            commit(members, off, taken == m, true);
            return true;
        }
        // wedge sweeps anchored on face i, growing face j
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                const double alpha = dot(ops.n[i], pts[h]) + 1e-7;
                std::vector<std::pair<double, int>> order;
                for (int q = 0; q < n; ++q)
                    if (dot(ops.n[i], pts[q]) < alpha - kGeoTol)
                        order.push_back({dot(ops.n[j], pts[q]), q});
                std::sort(order.begin(), order.end());
                if (order.empty() || order[0].second != h) continue;
                SubsetMask members;
                double level = order[0].first;
                int taken = 0;
                for (const auto& [val, q] : order) {
                    if (colored(q)) break;
                    members.set(q);
                    level = val;
                    if (++taken == m) break;
                }
                if (taken == 0 || !members.test(h)) continue;
                const double next = taken < int(order.size()) ? order[taken].first : level + 1.0;
                if (!(next - level > 1e-12)) continue;
                const Vec3 off = far_wedge_offset(i, j, alpha, 0.5 * (level + next));
                const SubsetMask closed = ct.closed_mask_at(off);
                if (!(closed == members)) continue;
                commit(members, off, taken == m, true);
                return true;
            }
        return false;
    }

    Vec3 far_halfspace_offset(int i, double level) const {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        Vec3 off = ops.dual[i] * level;
        double mj = -kInf, mk = -kInf;
        for (const auto& q : pts) {
            mj = std::max(mj, dot(ops.n[j], q - off));
            mk = std::max(mk, dot(ops.n[k], q - off));
        }
        const double slack = 1.0 + std::fabs(level);
        return off + ops.dual[j] * (mj + slack) + ops.dual[k] * (mk + slack);
    }

    Vec3 far_wedge_offset(int i, int j, double alpha, double beta) const {
        const int k = 3 - i - j;
        Vec3 off = ops.dual[i] * alpha + ops.dual[j] * beta;
        double mk = -kInf;
        for (const auto& q : pts) mk = std::max(mk, dot(ops.n[k], q - off));
        return off + ops.dual[k] * (mk + 1.0 + std::fabs(alpha) + std::fabs(beta));
    }
};

} // namespace

Coloring color_points(std::span<const Vec3> ptspan, const SimplicialCone& flat_cone, int m,
                      std::span<const int> hull) {
    if (m < 1) throw ValidationError("color threshold must be at least 1");
    const std::vector<Vec3> pts(ptspan.begin(), ptspan.end());
    Coloring out;
    out.m = m;
    out.color.assign(pts.size(), -1);
    if (pts.empty()) return out;

    const ConeOps ops(flat_cone);
    const CanonicalTranslates ct(CanonicalShape::from_cone(flat_cone), pts);
    Engine eng{pts, ops, ct, out, m};

    // Candidates ordered smallest-first so bites need little shrinking.
    std::vector<int> order(ct.realized().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int ca = ct.realized()[a].members.count(), cb = ct.realized()[b].members.count();
        return ca != cb ? ca < cb : a < b;
    });

    // Phase 1: color every hull point.
    for (;;) {
        int target = -1;
        for (int h : hull)
            if (out.color[h] < 0) { target = h; break; }
        if (target < 0) break;
        bool done = false;
        for (int idx : order)
            if (eng.try_bite(ct.realized()[idx], target, true)) { done = true; break; }
        if (!done && !eng.sweep_bite(target))
            throw InvariantError("phase-1 bite failed for a hull point");
    }

    // Phase 2: maximal disjoint collection over the remaining points.
    for (;;) {
        bool done = false;
        for (int idx : order) {
            const auto& r = ct.realized()[idx];
            if (r.members.count() < m) continue;
            if (eng.try_bite(r, -1, false)) { done = true; break; }
        }
        if (!done) break;
    }
    return out;
}

} // namespace conenet
