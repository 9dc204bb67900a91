#include "conenet/planar/corridor.hpp"

#include <algorithm>
#include <set>

namespace conenet {

namespace {

int distinct_colors(const DDelaunay& G, std::span<const int> color, int t) {
    std::set<int> s = {color[G.tris[t].a], color[G.tris[t].b], color[G.tris[t].c]};
    return int(s.size());
}

bool edge_bi_colored(const DDelaunay& G, std::span<const int> color, int e) {
    return color[G.edges[e].a] != color[G.edges[e].b];
}

// The two bi-colored edges of a bi-colored triangle.
std::array<int, 2> bi_edges(const DDelaunay& G, std::span<const int> color, int t) {
    std::array<int, 2> out{-1, -1};
    int k = 0;
    for (int e : G.tris[t].edge)
        if (edge_bi_colored(G, color, e) && k < 2) out[k++] = e;
    return out;
}

} // namespace

std::vector<std::vector<int>> corridors(const DDelaunay& G, std::span<const int> vertex_color) {
    const int nt = int(G.tris.size());
    std::vector<char> is_bi(nt, 0);
    for (int t = 0; t < nt; ++t) is_bi[t] = distinct_colors(G, vertex_color, t) == 2;

    // neighbor bi-triangles through bi-colored edges
    auto neighbors = [&](int t) {
        std::vector<int> ns;
        for (int e : bi_edges(G, vertex_color, t)) {
            if (e < 0) continue;
            const int o = G.edges[e].tri[0] == t ? G.edges[e].tri[1] : G.edges[e].tri[0];
            if (o >= 0 && is_bi[o]) ns.push_back(o);
        }
        return ns;
    };

    std::vector<char> used(nt, 0);
    std::vector<std::vector<int>> out;
    for (int t0 = 0; t0 < nt; ++t0) {
        if (!is_bi[t0] || used[t0]) continue;
        // walk to one end (or detect a cycle)
        int start = t0, prev = -1;
        for (int guard = 0; guard <= nt; ++guard) {
            const auto ns = neighbors(start);
            int nxt = -1;
            for (int o : ns)
                if (o != prev) nxt = o;
            if (nxt < 0 || nxt == t0) break; // end of path or closed cycle
            prev = start;
            start = nxt;
            if (guard == nt) break;
        }
        std::vector<int> chain;
        int cur = start;
        prev = -1;
        while (cur >= 0 && !used[cur]) {
            used[cur] = 1;
            chain.push_back(cur);
            int nxt = -1;
            for (int o : neighbors(cur))
                if (o != prev && !used[o]) nxt = o;
            prev = cur;
            cur = nxt;
        }
        out.push_back(std::move(chain));
    }
    return out;
}

std::vector<SubCorridor> subdivide(const DDelaunay& G, std::span<const int> vertex_color,
                                   const std::vector<int>& chain,
                                   std::span<const int> tri_colorless, int m) {
    std::vector<SubCorridor> subs;
    std::size_t i = 0;
    while (i < chain.size()) {
        SubCorridor sc;
        int total = 0;
        std::size_t j = i;
        while (j < chain.size()) {
            const int c = tri_colorless[chain[j]];
            if (j == i && c > m) {
                sc.over_full = true;
                total = c;
                ++j;
                break;
            }
            if (total + c > m) break;
            total += c;
            ++j;
        }
        sc.tris.assign(chain.begin() + i, chain.begin() + j);
        sc.colorless_inside = total;

        // End edges: the cut edge toward the previous slice (or the terminal
        // bi-edge of the corridor) and symmetrically on the right.
        auto shared_edge = [&](int t1, int t2) {
            for (int e : G.tris[t1].edge)
                if (G.edges[e].tri[0] == t2 || G.edges[e].tri[1] == t2) return e;
            return -1;
        };
        std::vector<int> ends;
        const int first = chain[i], last = chain[j - 1];
        if (i > 0) {
            ends.push_back(shared_edge(chain[i - 1], first));
        } else {
            for (int e : bi_edges(G, vertex_color, first)) {
                const int o = e < 0 ? -1 : (G.edges[e].tri[0] == first ? G.edges[e].tri[1] : G.edges[e].tri[0]);
                const bool internal = j > i + 1 && o == chain[i + 1];
                if (e >= 0 && !internal) { ends.push_back(e); break; }
            }
        }
        if (j < chain.size()) {
            ends.push_back(shared_edge(last, chain[j]));
        } else {
            for (int e : bi_edges(G, vertex_color, last)) {
                const int o = e < 0 ? -1 : (G.edges[e].tri[0] == last ? G.edges[e].tri[1] : G.edges[e].tri[0]);
                const bool internal = j - 1 > i && o == chain[j - 2];
                const bool already = !ends.empty() && e == ends.front();
                if (e >= 0 && !internal && !already) { ends.push_back(e); break; }
            }
        }
        std::set<int> corner_set;
        for (int e : ends) {
            if (e < 0) continue;
            corner_set.insert(G.edges[e].a);
            corner_set.insert(G.edges[e].b);
        }
        sc.corners.assign(corner_set.begin(), corner_set.end());
        subs.push_back(std::move(sc));
        i = j;
    }
    return subs;
}

CorridorDecomposition build_corridors(const DDelaunay& G, std::span<const int> vertex_color,
                                      std::span<const Vec3> colorless_pts,
                                      const SimplicialCone& flat_cone, int m) {
    CorridorDecomposition out;
    const int nt = int(G.tris.size());
    out.tri_colorless.assign(nt, 0);

    // Locate colorless points by their triangle witness cones; counting a
    // point in several adjacent triangles only tightens the splits.
    const ConeOps ops(flat_cone);
    for (int ci = 0; ci < int(colorless_pts.size()); ++ci) {
        bool located = false;
        for (int t = 0; t < nt; ++t) {
            double mm = -1e300;
            for (int l = 0; l < 3; ++l)
                mm = std::max(mm, ops.margin(l, G.tris[t].witness.apex_pos, colorless_pts[ci]));
            if (mm <= kGeoTol) {
                ++out.tri_colorless[t];
                located = true;
            }
        }
        if (!located) out.unlocated.push_back(ci);
    }

    out.chains = corridors(G, vertex_color);
    for (const auto& chain : out.chains) {
        auto subs = subdivide(G, vertex_color, chain, out.tri_colorless, m);
        out.subs.insert(out.subs.end(), subs.begin(), subs.end());
    }
    for (int t = 0; t < nt; ++t)
        if (distinct_colors(G, vertex_color, t) == 3 && out.tri_colorless[t] > m)
            out.safeguard_tris.push_back(t);
    return out;
}

} // namespace conenet
