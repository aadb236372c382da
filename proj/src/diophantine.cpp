#include "rootcert/diophantine.hpp"

#include "rootcert/errors.hpp"

namespace rootcert {

namespace {

// Iterations the scan may take before it is refused outright.
constexpr unsigned long kScanCap = 50'000'000;

}  // namespace

DirichletResult dirichlet(const RVec& x, const Integer& Q) {
    if (x.empty()) throw PreconditionError("dirichlet: empty vector");
    if (Q < 2) throw PreconditionError("dirichlet: Q must be at least 2");
    Integer limit = 1;
    for (std::size_t i = 0; i < x.size(); ++i) limit *= Q;
    const Rational eps = Rational(1) / Rational(Q);

    DirichletResult res;
    res.Q = Q;
    res.p.resize(x.size());
    res.errors.resize(x.size());
    Rational qx;
    unsigned long iterations = 0;
    for (Integer q = 1; q < limit; ++q) {
        if (++iterations > kScanCap)
            throw RefusalError("dirichlet: scan exceeded " + std::to_string(kScanCap) + " candidates (Q = " +
                               to_string(Q) + ", d = " + std::to_string(x.size()) + ")");
        bool ok = true;
        for (std::size_t i = 0; i < x.size() && ok; ++i) {
            qx = x[i] * q;
            res.p[i] = round_of(qx);
            res.errors[i] = abs_of(qx - res.p[i]);
            ok = res.errors[i] <= eps;
        }
        if (ok) {
            res.q = q;
            return res;
        }
    }
    throw InvariantError("dirichlet: no q below Q^d met the bound");
}

DirichletResult dirichlet(const std::vector<double>& x, const Integer& Q) {
    RVec exact;
    for (double v : x) exact.emplace_back(v);
    return dirichlet(exact, Q);
}

Rationalization rationalize(const RVec& b, const Rational& tol) {
    if (is_zero(b)) throw PreconditionError("rationalize: b must be non-zero");
    if (sgn(tol) <= 0) throw PreconditionError("rationalize: tolerance must be positive");
    Integer Q = floor_of(1 / tol) + 1;
    if (Q < 2) Q = 2;
    for (std::size_t retry = 0; retry <= 64; ++retry, Q *= 2) {
        const auto d = dirichlet(b, Q);
        bool ok = true;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (sgn(b[i]) != 0 && d.p[i] == 0) ok = false;
        if (ok) return {d.p, d.q, Q, retry};
    }
    throw InvariantError("rationalize: a non-zero coordinate still rounds to 0 after 64 retries");
}

Rationalization rationalize_character(const RVec& b, const Rational& R, std::size_t r) {
    if (sgn(R) <= 0) throw PreconditionError("rationalize_character: R must be positive");
    if (r == 0) throw PreconditionError("rationalize_character: rank must be positive");
    return rationalize(b, 1 / (2 * R * static_cast<long>(r)));
}

}  // namespace rootcert
