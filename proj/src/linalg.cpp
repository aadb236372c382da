#include "rootcert/linalg.hpp"

#include <utility>

#include "rootcert/errors.hpp"

namespace rootcert::linalg {

std::vector<std::size_t> rref(RMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && sgn(m(sel, col)) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const RMat& m) {
    RMat copy = m;
    return rref(copy).size();
}

std::vector<RVec> nullspace(const RMat& m) {
    RMat r = m;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RVec v(m.cols());
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rational determinant(const RMat& m) {
    if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
    RMat a = m;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && sgn(a(sel, col)) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

RMat inverse(const RMat& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw PreconditionError("inverse of a non-square matrix");
    RMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
    RMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

RVec solve(const RMat& m, const RVec& b) { return inverse(m) * b; }

std::vector<RVec> independent_subset(const std::vector<RVec>& vecs) {
    std::vector<RVec> kept;
    for (const auto& v : vecs) {
        auto trial = kept;
        trial.push_back(v);
        if (rank(RMat::from_rows(trial)) == trial.size()) kept = std::move(trial);
    }
    return kept;
}

std::vector<Rational> leading_minors(const RMat& m) {
    std::vector<Rational> out;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        RMat sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
        out.push_back(determinant(sub));
    }
    return out;
}

}  // namespace rootcert::linalg
