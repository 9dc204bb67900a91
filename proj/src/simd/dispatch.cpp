#include "conenet/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace conenet::simd {

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

namespace {

const KernelOps& select() {
    if (const char* env = std::getenv("CONENET_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return avx2_kernels();
#endif
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return avx2_kernels();
#endif
    return scalar_kernels();
}

} // namespace

const KernelOps& active_kernels() {
    static const KernelOps& ops = select();
    return ops;
}

} // namespace conenet::simd
