#pragma once

#include <cstddef>
#include <cstdint>

namespace rootcert::simd {

// out[j] = || basis * c_j ||^2 for K integer coefficient vectors.
// basis: N x N column-major (basis[r + i*N] is row r of column i).
// coeffs: structure of arrays, coeffs[i*K + j] is coordinate i of candidate j.
// Every backend uses the same operation order without fused multiply-add,
// so all of them return bit-identical results.
using NormKernel = void (*)(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                            double* out);

void batch_sqnorms_scalar(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                          double* out);
#if defined(__x86_64__) || defined(__i386__)
void batch_sqnorms_avx2(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                        double* out);
#endif
#if defined(__aarch64__)
void batch_sqnorms_neon(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                        double* out);
#endif

bool avx2_supported();

// Picked once per process: ROOTCERT_SIMD=scalar forces the reference path.
NormKernel selected_kernel();
const char* selected_backend();

inline void batch_sqnorms(const double* basis, std::size_t N, const std::int32_t* coeffs, std::size_t K,
                          double* out) {
    selected_kernel()(basis, N, coeffs, K, out);
}

}  // namespace rootcert::simd
