#pragma once

#include <cstdint>
#include <vector>

#include "rootcert/rational.hpp"

namespace rootcert {

struct DirichletResult {
    Integer q;
    std::vector<Integer> p;
    Integer Q;
    // |q x_i - p_i|, exact.
    RVec errors;
};

// Smallest q in [1, Q^d) with |q x_i - round(q x_i)| <= 1/Q for every i.
// Doubles enter through their exact binary value.
DirichletResult dirichlet(const RVec& x, const Integer& Q);
DirichletResult dirichlet(const std::vector<double>& x, const Integer& Q);

struct Rationalization {
    std::vector<Integer> p;
    // The integer multiplier q applied to b.
    Integer scale;
    Integer Q;
    std::size_t retries = 0;
};

// |scale*b_i - p_i| < tol and p_i != 0 whenever b_i != 0. Q starts at
// floor(1/tol)+1 and doubles on each retry (at most 64).
Rationalization rationalize(const RVec& b, const Rational& tol);

// tol = 1/(2 R r).
Rationalization rationalize_character(const RVec& b, const Rational& R, std::size_t r);

}  // namespace rootcert
