#include "rootcert/simd_norms.hpp"

namespace rootcert::simd {

void batch_sqnorms_scalar(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                          double* out) {
    for (std::size_t j = 0; j < K; ++j) {
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

}  // namespace rootcert::simd
