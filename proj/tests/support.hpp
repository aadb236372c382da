#pragma once

#include <random>
#include <vector>

#include "rootcert/linalg.hpp"
#include "rootcert/rootcore.hpp"
#include "rootcert/torus.hpp"

namespace rootcert::testing {

using Rng = std::mt19937_64;

inline Rational small_rational(Rng& rng, int range = 3, bool allow_fraction = true) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 5), coin(0, 3);
    if (allow_fraction && coin(rng) == 0) return Rational(num(rng), den(rng));
    return Rational(num(rng));
}

inline RVec random_vec(Rng& rng, std::size_t n, int range = 3, bool allow_fraction = true) {
    RVec v(n);
    for (auto& x : v) {
        x = small_rational(rng, range, allow_fraction);
        x.canonicalize();
    }
    return v;
}

inline RVec random_nonzero_vec(Rng& rng, std::size_t n, int range = 3, bool allow_fraction = true) {
    for (;;) {
        RVec v = random_vec(rng, n, range, allow_fraction);
        if (!is_zero(v)) return v;
    }
}

inline std::size_t span_rank(const std::vector<TorusVector>& vs) {
    if (vs.empty()) return 0;
    std::vector<RVec> rows;
    for (const auto& v : vs) rows.push_back(v.coords);
    return linalg::rank(RMat::from_rows(rows));
}

// k linearly independent torus vectors.
inline std::vector<TorusVector> random_independent(Rng& rng, std::size_t n, std::size_t k, int range = 3,
                                                   bool allow_fraction = true) {
    for (;;) {
        std::vector<TorusVector> vs;
        for (std::size_t j = 0; j < k; ++j) vs.emplace_back(random_vec(rng, n, range, allow_fraction));
        if (span_rank(vs) == k) return vs;
    }
}

// Nonzero t with chi(t) = 0.
inline TorusVector random_kernel_vector(Rng& rng, const RootSystem& sys, const Weight& chi) {
    const std::size_t n = sys.rank();
    RMat f(1, n);
    for (std::size_t j = 0; j < n; ++j) f(0, j) = sys.evaluate(chi, TorusVector::unit(n, j));
    const auto kernel = linalg::nullspace(f);
    std::uniform_int_distribution<int> c(-3, 3);
    for (;;) {
        RVec t(n);
        for (const auto& b : kernel) t = add(t, scale(b, Rational(c(rng))));
        if (!is_zero(t)) return TorusVector(t);
    }
}

}  // namespace rootcert::testing
