#include "conenet/geom/distance.hpp"

#include <algorithm>
#include <cmath>

namespace conenet {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return dist(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

double segment_segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
    // Closest points of two segments, clamped coordinate descent on the
    // quadratic; exact for the non-parallel case, safe for parallel.
    const Vec3 d1 = a1 - a0, d2 = b1 - b0, r = a0 - b0;
    const double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
    double s = 0.0, t = 0.0;
    if (a <= 1e-30 && e <= 1e-30) return dist(a0, b0);
    if (a <= 1e-30) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= 1e-30) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            if (denom > 1e-30) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return dist(a0 + d1 * s, b0 + d2 * t);
}

double point_polygon_distance(const Vec3& p, std::span<const Vec3> poly) {
    if (poly.size() == 1) return dist(p, poly[0]);
    if (poly.size() == 2) return point_segment_distance(p, poly[0], poly[1]);
    Vec3 n{0, 0, 0};
    for (std::size_t i = 1; i + 1 < poly.size(); ++i)
        n += cross(poly[i] - poly[0], poly[i + 1] - poly[0]);
    const double nn = norm(n);
    double best = 1e300;
    for (std::size_t i = 0; i < poly.size(); ++i)
        best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
    if (nn < 1e-30) return best;
    n = n / nn;
    // Perpendicular foot counts only if it lands inside the polygon.
    const double h = dot(p - poly[0], n);
    const Vec3 foot = p - n * h;
    bool inside = true;
    for (std::size_t i = 0; i < poly.size() && inside; ++i) {
        const Vec3 edge = poly[(i + 1) % poly.size()] - poly[i];
        if (dot(cross(edge, foot - poly[i]), n) < -1e-12) inside = false;
    }
    if (inside) best = std::min(best, std::fabs(h));
    return best;
}

} // namespace conenet
