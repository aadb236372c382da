#include <random>

#include "doctest.h"
#include "rootcert/errors.hpp"
#include "rootcert/linalg.hpp"
#include "rootcert/torus.hpp"

using namespace rootcert;

namespace {

TorusVector T(std::initializer_list<long> c) {
    RVec v;
    for (long x : c) v.emplace_back(x);
    return TorusVector(v);
}

std::size_t span_rank(const std::vector<TorusVector>& a, const std::vector<TorusVector>& b = {}) {
    std::vector<RVec> rows;
    for (const auto& v : a) rows.push_back(v.coords);
    for (const auto& v : b) rows.push_back(v.coords);
    if (rows.empty()) return 0;
    return linalg::rank(RMat::from_rows(rows));
}

}  // namespace

TEST_CASE("split datum for a line in A2") {
    SplitDatum d(RootSystem::from_kind("A2"), {T({1, 1})});
    CHECK(d.rank_q() == 1);
    REQUIRE(d.aniso_basis().size() == 1);
    // hand computation: t0 is the line x1 + x2 = 0
    CHECK(span_rank({d.aniso_basis()[0], T({1, -1})}) == 1);
    // restricted roots are {+-s/2, +-s}: not reduced
    CHECK_FALSE(d.restricted().has_value());
    CHECK(d.restricted_error().find("not reduced") != std::string::npos);
    CHECK_THROWS_AS(d.require_restricted(), DomainError);
}

TEST_CASE("decompose examples") {
    SplitDatum d(RootSystem::from_kind("A2"), {T({1, 1})});
    Subspace full{{T({1, 0}), T({0, 1})}};
    auto dec = decompose(full, d);
    CHECK(dec.ani.dim() == 1);
    CHECK(dec.spl.dim() == 1);
    CHECK(span_rank(dec.ani.basis, {T({1, -1})}) == 1);
    CHECK(span_rank(dec.ani.basis, dec.spl.basis) == 2);

    auto in_s = decompose(Subspace{{T({2, 2})}}, d);
    CHECK(in_s.ani.trivial());
    CHECK(in_s.spl.dim() == 1);

    auto in_t0 = decompose(Subspace{{T({3, -3})}}, d);
    CHECK(in_t0.ani.dim() == 1);
    CHECK(in_t0.spl.trivial());

    CHECK(decompose(Subspace{}, d).ani.trivial());
    CHECK_THROWS_AS(decompose(Subspace{{T({1, 1}), T({2, 2})}}, d), PreconditionError);
    CHECK_THROWS_AS(decompose(Subspace{{T({1, 1, 1})}}, d), PreconditionError);
}

TEST_CASE("q_character_vanishing_on examples") {
    SplitDatum split(RootSystem::from_kind("A2"));
    Weight chi = q_character_vanishing_on(Subspace{{T({1, 1})}}, split);
    CHECK(chi == Weight(RVec{1, -1}));
    CHECK_THROWS_AS(q_character_vanishing_on(Subspace{{T({1, 1}), T({1, 0})}}, split), PreconditionError);

    SplitDatum line(RootSystem::from_kind("A2"), {T({1, 1})});
    Weight any = q_character_vanishing_on(Subspace{}, line);
    CHECK_FALSE(any.is_zero());
    CHECK(line.ambient().evaluate(any, line.aniso_basis()[0]) == 0);
}

TEST_CASE("make_almost_split examples") {
    SplitDatum d(RootSystem::from_kind("A2"), {T({1, 1})});
    auto same = make_almost_split(Subspace{{T({1, 1})}}, d);
    CHECK(same.trace.empty());
    CHECK(same.w.length() == 0);

    auto r = make_almost_split(Subspace{{T({1, -1})}}, d);
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].beta == RootVector(RVec{1, 0}));
    CHECK(r.trace[0].new_split_dim == 1);
    CHECK(r.image.basis[0] == T({-1, 0}));
    CHECK(decompose(r.image, d).ani.trivial());

    CHECK_THROWS_AS(make_almost_split(Subspace{{T({1, 0}), T({0, 1})}}, d), PreconditionError);
}

TEST_CASE("restricted roots of the fully split torus are the ambient roots") {
    for (const char* kind : {"A2", "B2", "G2", "A3", "A2xA1"}) {
        CAPTURE(kind);
        SplitDatum d(RootSystem::from_kind(kind));
        REQUIRE(d.restricted().has_value());
        const auto& q = d.restricted()->system;
        CHECK(q.cartan() == d.ambient().cartan());
        const TorusVector t(RVec(d.ambient().rank(), Rational(3, 7)));
        CHECK(d.to_relative(t) == t);
        Weight chi = d.ambient().rho();
        CHECK(d.extend_character(chi) == chi);
    }
}

TEST_CASE("restricted roots of a diagonal in A1xA1") {
    SplitDatum d(RootSystem::from_kind("A1xA1"), {T({1, 1})});
    REQUIRE(d.restricted().has_value());
    CHECK(d.restricted()->system.rank() == 1);
    CHECK(d.restricted()->system.positive_roots().size() == 1);
    // relative coordinate of (1,1) is 1: both roots restrict to alpha~
    CHECK(d.to_relative(T({1, 1})) == TorusVector(RVec{1}));
    const Weight ext = d.extend_character(Weight(RVec{1}));
    CHECK(d.ambient().evaluate(ext, d.aniso_basis()[0]) == 0);
    CHECK(d.ambient().evaluate(ext, T({1, 1})) ==
          d.restricted()->system.evaluate(Weight(RVec{1}), TorusVector(RVec{1})));
}

TEST_CASE("restricted roots of the diagram-symmetric part of A3") {
    SplitDatum d(RootSystem::from_kind("A3"), {T({1, 0, 1}), T({0, 1, 0})});
    REQUIRE(d.restricted().has_value());
    const auto& q = d.restricted()->system;
    CHECK(q.rank() == 2);
    CHECK(q.positive_roots().size() == 4);
    CHECK(q.max_simple_root_pairing() == 2);
    // extension vanishes on t0 and restricts back
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> r(-4, 4);
    for (int k = 0; k < 20; ++k) {
        Weight rel(RVec{r(rng), r(rng)});
        Weight ext = d.extend_character(rel);
        for (const auto& v : d.aniso_basis()) CHECK(d.ambient().evaluate(ext, v) == 0);
        TorusVector t = Rational(r(rng)) * d.split_basis()[0] + Rational(r(rng)) * d.split_basis()[1];
        CHECK(d.ambient().evaluate(ext, t) == q.evaluate(rel, d.to_relative(t)));
    }
}

TEST_CASE("randomized decompose and almost-split properties") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const char* kind : {"A2", "B2", "A3"}) {
        const auto sys = RootSystem::from_kind(kind);
        const std::size_t n = sys.rank();
        WeylGroup weyl(sys);
        int runs = 0;
        while (runs < 25) {
            const std::size_t k = 1 + rng() % n;
            std::vector<TorusVector> s;
            for (std::size_t j = 0; j < k; ++j) {
                RVec v(n);
                for (auto& x : v) x = coef(rng);
                s.emplace_back(v);
            }
            if (span_rank(s) != k) continue;
            SplitDatum d(sys, s);
            const std::size_t m = 1 + rng() % k;
            std::vector<TorusVector> a;
            for (std::size_t j = 0; j < m; ++j) {
                if (!d.aniso_basis().empty() && rng() % 2) {
                    a.push_back(d.aniso_basis()[rng() % d.aniso_basis().size()]);
                } else {
                    RVec v(n);
                    for (auto& x : v) x = coef(rng);
                    a.emplace_back(v);
                }
            }
            if (span_rank(a) != m) continue;
            ++runs;
            Subspace sub{a};
            auto dec = decompose(sub, d);
            CHECK(dec.ani.dim() + dec.spl.dim() == m);
            CHECK(span_rank(dec.ani.basis, dec.spl.basis) == m);
            CHECK(span_rank(a, dec.ani.basis) == m);
            CHECK(span_rank(a, dec.spl.basis) == m);
            for (const auto& v : dec.ani.basis)
                for (const auto& sv : s) CHECK(d.torus_inner(v, sv) == 0);
            if (dec.spl.dim() < k) {
                Weight chi = q_character_vanishing_on(dec.spl, d);
                for (const auto& v : dec.spl.basis) CHECK(sys.evaluate(chi, v) == 0);
                for (const auto& v : d.aniso_basis()) CHECK(sys.evaluate(chi, v) == 0);
            }
            auto res = make_almost_split(sub, d, weyl);
            CHECK(res.trace.size() == dec.ani.dim());
            CHECK(decompose(res.image, d).ani.trivial());
            std::size_t prev = dec.spl.dim();
            for (const auto& st : res.trace) {
                CHECK(st.new_split_dim > prev);
                prev = st.new_split_dim;
            }
            for (std::size_t j = 0; j < m; ++j) CHECK(weyl.act(res.w, a[j]) == res.image.basis[j]);
        }
    }
}
