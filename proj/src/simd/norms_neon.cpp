#include "rootcert/simd_norms.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace rootcert::simd {

void batch_sqnorms_neon(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                        double* out) {
    std::size_t j = 0;
    for (; j + 2 <= K; j += 2) {
        float64x2_t norm = vdupq_n_f64(0.0);
        for (std::size_t r = 0; r < N; ++r) {
            float64x2_t acc = vdupq_n_f64(0.0);
            for (std::size_t i = 0; i < N; ++i) {
                const int32x2_t ci = vld1_s32(coeffs + i * K + j);
                const float64x2_t c = vcvtq_f64_s64(vmovl_s32(ci));
                // vmulq + vaddq, never vfmaq: keeps rounding identical to scalar
                acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(basis[r + i * N]), c));
            }
            norm = vaddq_f64(norm, vmulq_f64(acc, acc));
        }
        vst1q_f64(out + j, norm);
    }
    if (j < K) batch_sqnorms_scalar(basis, N, coeffs + j, K - j, out + j);
}

}  // namespace rootcert::simd
#endif
