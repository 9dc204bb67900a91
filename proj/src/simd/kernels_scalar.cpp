#include "conenet/simd/kernels.hpp"

#include <cmath>
#include <limits>

namespace conenet::simd {

namespace {

inline double form_margin(const AffineForm& f, double px, double py, double pz) {
    return std::fma(f.a.x, px, std::fma(f.a.y, py, std::fma(f.a.z, pz, -f.b)));
}

void max_margins_scalar(const double* x, const double* y, const double* z, std::size_t n,
                        const AffineForm* forms, std::size_t nf, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < nf; ++f) {
            m = std::max(m, form_margin(forms[f], x[i], y[i], z[i]));
        }
        out[i] = m;
    }
}

void containment_masks_scalar(const double* x, const double* y, const double* z, std::size_t n,
                              const AffineForm* forms, std::size_t nf, double tau,
                              std::uint64_t* strict_words, std::uint64_t* closed_words) {
    const std::size_t words = mask_words(n);
    for (std::size_t w = 0; w < words; ++w) { strict_words[w] = 0; closed_words[w] = 0; }
    for (std::size_t i = 0; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < nf; ++f) {
            m = std::max(m, form_margin(forms[f], x[i], y[i], z[i]));
        }
        const std::uint64_t bit = std::uint64_t(1) << (i & 63);
        if (m < -tau) strict_words[i >> 6] |= bit;
        if (m <= tau) closed_words[i >> 6] |= bit;
    }
}

} // namespace

const KernelOps& scalar_kernels() {
    static const KernelOps ops{max_margins_scalar, containment_masks_scalar, "scalar"};
    return ops;
}

Masks containment_masks(const PointsSoA& pts, std::span<const AffineForm> forms, double tau) {
    Masks m;
    m.strict.assign(mask_words(pts.size()), 0);
    m.closed.assign(mask_words(pts.size()), 0);
    if (pts.size() == 0) return m;
    active_kernels().containment_masks(pts.x.data(), pts.y.data(), pts.z.data(), pts.size(),
                                       forms.data(), forms.size(), tau,
                                       m.strict.data(), m.closed.data());
    for (auto w : m.strict) m.strict_count += __builtin_popcountll(w);
    for (auto w : m.closed) m.closed_count += __builtin_popcountll(w);
    return m;
}

Mask64 containment_mask64(const PointsSoA& pts, std::span<const AffineForm> forms, double tau) {
    Mask64 out;
    if (pts.size() == 0) return out;
    active_kernels().containment_masks(pts.x.data(), pts.y.data(), pts.z.data(), pts.size(),
                                       forms.data(), forms.size(), tau, &out.strict, &out.closed);
    return out;
}

} // namespace conenet::simd
