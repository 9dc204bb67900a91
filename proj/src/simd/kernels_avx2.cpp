// AVX2/FMA variant of the batch containment kernels. Four points per lane
// group; the per-form fma chain matches the scalar reference exactly, so the
// two implementations agree bit for bit (equivalence-tested).

#if defined(__x86_64__) || defined(_M_X64)

#include "conenet/simd/kernels.hpp"

#include <cmath>
#include <immintrin.h>
#include <limits>

namespace conenet::simd {

namespace {

inline double form_margin(const AffineForm& f, double px, double py, double pz) {
    return std::fma(f.a.x, px, std::fma(f.a.y, py, std::fma(f.a.z, pz, -f.b)));
}

inline __m256d max_margin4(const double* x, const double* y, const double* z, std::size_t i,
                           const AffineForm* forms, std::size_t nf) {
    const __m256d px = _mm256_loadu_pd(x + i);
    const __m256d py = _mm256_loadu_pd(y + i);
    const __m256d pz = _mm256_loadu_pd(z + i);
    __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    for (std::size_t f = 0; f < nf; ++f) {
        const __m256d ax = _mm256_set1_pd(forms[f].a.x);
        const __m256d ay = _mm256_set1_pd(forms[f].a.y);
        const __m256d az = _mm256_set1_pd(forms[f].a.z);
        __m256d v = _mm256_set1_pd(-forms[f].b);
        v = _mm256_fmadd_pd(az, pz, v);
        v = _mm256_fmadd_pd(ay, py, v);
        v = _mm256_fmadd_pd(ax, px, v);
        m = _mm256_max_pd(m, v);
    }
    return m;
}

void max_margins_avx2(const double* x, const double* y, const double* z, std::size_t n,
                      const AffineForm* forms, std::size_t nf, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, max_margin4(x, y, z, i, forms, nf));
    }
    for (; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < nf; ++f) m = std::max(m, form_margin(forms[f], x[i], y[i], z[i]));
        out[i] = m;
    }
}

void containment_masks_avx2(const double* x, const double* y, const double* z, std::size_t n,
                            const AffineForm* forms, std::size_t nf, double tau,
                            std::uint64_t* strict_words, std::uint64_t* closed_words) {
    const std::size_t words = mask_words(n);
    for (std::size_t w = 0; w < words; ++w) { strict_words[w] = 0; closed_words[w] = 0; }
    const __m256d neg_tau = _mm256_set1_pd(-tau);
    const __m256d pos_tau = _mm256_set1_pd(tau);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d m = max_margin4(x, y, z, i, forms, nf);
        const auto s = std::uint64_t(_mm256_movemask_pd(_mm256_cmp_pd(m, neg_tau, _CMP_LT_OQ)));
        const auto c = std::uint64_t(_mm256_movemask_pd(_mm256_cmp_pd(m, pos_tau, _CMP_LE_OQ)));
        strict_words[i >> 6] |= s << (i & 63);
        closed_words[i >> 6] |= c << (i & 63);
    }
    for (; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < nf; ++f) m = std::max(m, form_margin(forms[f], x[i], y[i], z[i]));
        const std::uint64_t bit = std::uint64_t(1) << (i & 63);
        if (m < -tau) strict_words[i >> 6] |= bit;
        if (m <= tau) closed_words[i >> 6] |= bit;
    }
}

} // namespace

const KernelOps& avx2_kernels() {
    static const KernelOps ops{max_margins_avx2, containment_masks_avx2, "avx2"};
    return ops;
}

} // namespace conenet::simd

#endif // x86-64
