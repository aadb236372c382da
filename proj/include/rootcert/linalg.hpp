#pragma once

#include <optional>
#include <vector>

#include "rootcert/rational.hpp"

namespace rootcert::linalg {

// Reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RMat& m);

std::size_t rank(const RMat& m);

// Basis of {x : m x = 0}. One vector per free column, with a 1 in that column.
std::vector<RVec> nullspace(const RMat& m);

Rational determinant(const RMat& m);

// Throws DomainError when singular.
RMat inverse(const RMat& m);

// Solves m x = b for square nonsingular m.
RVec solve(const RMat& m, const RVec& b);

// Keeps a maximal linearly independent prefix-greedy subset.
std::vector<RVec> independent_subset(const std::vector<RVec>& vecs);

// Leading principal minors det(m[0..k, 0..k]) for k = 1..n.
std::vector<Rational> leading_minors(const RMat& m);

}  // namespace rootcert::linalg
