#include "conenet/planar/svg.hpp"

#include <cstdio>
#include <fstream>

namespace conenet {

namespace {

const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
                          "#f032e6", "#bcf60c", "#fabebe", "#008080", "#9a6324", "#800000",
                          "#808000", "#000075", "#aaffc3", "#ffd8b1"};

} // namespace

void write_svg(const std::string& path, const DDelaunay& G, std::span<const int> vertex_color,
               const CorridorDecomposition& cd, std::span<const Vec2> colorless,
               std::span<const Vec2> net_points) {
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    auto grow = [&](const Vec2& p) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    };
    for (const auto& p : G.pos) grow(p);
    for (const auto& p : colorless) grow(p);
    if (lo_x > hi_x) { lo_x = lo_y = 0; hi_x = hi_y = 1; }
    const double span = std::max(hi_x - lo_x, hi_y - lo_y) + 1e-9;
    const double scale = 720.0 / span, pad = 40.0;
    auto X = [&](const Vec2& p) { return pad + (p.x - lo_x) * scale; };
    auto Y = [&](const Vec2& p) { return pad + (hi_y - p.y) * scale; };

    std::ofstream f(path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='800' height='800'>\n";
    f << "<rect width='100%' height='100%' fill='white'/>\n";

    // corridor triangles (shaded straight-edge silhouettes)
    for (const auto& chain : cd.chains)
        for (int t : chain) {
            const auto& tri = G.tris[t];
            f << "<polygon points='" << X(G.pos[tri.a]) << "," << Y(G.pos[tri.a]) << " "
              << X(G.pos[tri.b]) << "," << Y(G.pos[tri.b]) << " " << X(G.pos[tri.c]) << ","
              << Y(G.pos[tri.c]) << "' fill='#fff3b0' stroke='none'/>\n";
        }

    for (const auto& e : G.edges) {
        f << "<polyline points='";
        for (const auto& p : e.polyline) f << X(p) << "," << Y(p) << " ";
        f << "' fill='none' stroke='#999' stroke-width='1'/>\n";
    }

    for (int v = 0; v < int(G.pos.size()); ++v) {
        const int c = vertex_color[v];
        const char* col = c >= 0 ? kPalette[c % 16] : "#444444";
        f << "<circle cx='" << X(G.pos[v]) << "' cy='" << Y(G.pos[v]) << "' r='4' fill='" << col
          << "'/>\n";
    }
    for (const auto& p : colorless)
        f << "<circle cx='" << X(p) << "' cy='" << Y(p) << "' r='2.5' fill='#bbbbbb'/>\n";
    for (const auto& p : net_points)
        f << "<circle cx='" << X(p) << "' cy='" << Y(p)
          << "' r='8' fill='none' stroke='black' stroke-width='2'/>\n";
    f << "</svg>\n";
}

} // namespace conenet
