#include <cstdlib>
#include <cstring>

#include "rootcert/simd_norms.hpp"

namespace rootcert::simd {

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

struct Choice {
    NormKernel kernel;
    const char* name;
};

Choice choose() {
    const char* env = std::getenv("ROOTCERT_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return {batch_sqnorms_scalar, "scalar"};
#if defined(__x86_64__) || defined(__i386__)
    if (avx2_supported()) return {batch_sqnorms_avx2, "avx2"};
#endif
#if defined(__aarch64__)
    return {batch_sqnorms_neon, "neon"};
#endif
    return {batch_sqnorms_scalar, "scalar"};
}

const Choice& choice() {
    static const Choice c = choose();
    return c;
}

}  // namespace

NormKernel selected_kernel() { return choice().kernel; }
const char* selected_backend() { return choice().name; }

}  // namespace rootcert::simd
