#include "rootcert/simd_norms.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace rootcert::simd {

// Four candidates per register; same order as the scalar loop.
void batch_sqnorms_avx2(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                        double* out) {
    std::size_t j = 0;
    for (; j + 4 <= K; j += 4) {
        __m256d norm = _mm256_setzero_pd();
        for (std::size_t r = 0; r < N; ++r) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t i = 0; i < N; ++i) {
                const __m128i ci = _mm_loadu_si128(reinterpret_cast<const __m128i*>(coeffs + i * K + j));
                const __m256d c = _mm256_cvtepi32_pd(ci);
                const __m256d b = _mm256_set1_pd(basis[r + i * N]);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(b, c));
            }
            norm = _mm256_add_pd(norm, _mm256_mul_pd(acc, acc));
        }
        _mm256_storeu_pd(out + j, norm);
    }
    if (j < K) {
        // tail: same arithmetic on the remaining candidates
        for (; j < K; ++j) {
            double norm = 0.0;
            for (std::size_t r = 0; r < N; ++r) {
                double acc = 0.0;
                for (std::size_t i = 0; i < N; ++i) {
                    const double prod = basis[r + i * N] * static_cast<double>(coeffs[i * K + j]);
                    acc = acc + prod;
                }
                const double sq = acc * acc;
                norm = norm + sq;
            }
            out[j] = norm;
        }
    }
}

}  // namespace rootcert::simd
#endif
