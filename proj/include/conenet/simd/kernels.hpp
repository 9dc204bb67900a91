#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "conenet/vec.hpp"

namespace conenet::simd {

// Structure-of-arrays point storage for the batch kernels.
struct PointsSoA {
    std::vector<double> x, y, z;

    PointsSoA() = default;
    explicit PointsSoA(std::span<const Vec3> pts) { assign(pts); }

    void assign(std::span<const Vec3> pts) {
        x.resize(pts.size()); y.resize(pts.size()); z.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            x[i] = pts[i].x; y[i] = pts[i].y; z[i] = pts[i].z;
        }
    }
    void push(const Vec3& p) { x.push_back(p.x); y.push_back(p.y); z.push_back(p.z); }
    std::size_t size() const { return x.size(); }
    Vec3 at(std::size_t i) const { return {x[i], y[i], z[i]}; }
};

// One linear inequality a·p <= b, evaluated as the margin a·p - b.
struct AffineForm {
    Vec3 a;
    double b = 0.0;
};

// A shape is the conjunction of forms; the per-point score is the max margin.
// Kernel contract (identical for every implementation, bit for bit):
//   out[i] = max over f of fma(a.x, x[i], fma(a.y, y[i], fma(a.z, z[i], -b)))
// and the mask kernel packs comparisons of that score into 64-bit words:
//   strict word bit i: score < -tau      (strictly interior)
//   closed word bit i: score <= tau      (interior or boundary)
struct KernelOps {
    void (*max_margins)(const double* x, const double* y, const double* z, std::size_t n,
                        const AffineForm* forms, std::size_t nf, double* out);
    void (*containment_masks)(const double* x, const double* y, const double* z, std::size_t n,
                              const AffineForm* forms, std::size_t nf, double tau,
                              std::uint64_t* strict_words, std::uint64_t* closed_words);
    const char* name;
};

// Active implementation, chosen once at startup from CPU features
// (override with CONENET_SIMD=scalar for testing).
const KernelOps& active_kernels();
const KernelOps& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const KernelOps& avx2_kernels();
bool avx2_available();
#endif

inline std::size_t mask_words(std::size_t n) { return (n + 63) / 64; }

// Convenience wrappers.
inline void max_margins(const PointsSoA& pts, std::span<const AffineForm> forms, double* out) {
    active_kernels().max_margins(pts.x.data(), pts.y.data(), pts.z.data(), pts.size(),
                                 forms.data(), forms.size(), out);
}

struct Masks {
    std::vector<std::uint64_t> strict, closed;
    int strict_count = 0, closed_count = 0;
};

Masks containment_masks(const PointsSoA& pts, std::span<const AffineForm> forms, double tau);

// Single-word variant for working sets of at most 64 points (the common case).
struct Mask64 {
    std::uint64_t strict = 0, closed = 0;
};
Mask64 containment_mask64(const PointsSoA& pts, std::span<const AffineForm> forms, double tau);

} // namespace conenet::simd
