#include <random>
#include <set>

#include "doctest.h"
#include "rootcert/certify.hpp"
#include "rootcert/errors.hpp"
#include "rootcert/linalg.hpp"

using namespace rootcert;

namespace {

TorusVector T(std::initializer_list<Rational> c) { return TorusVector(RVec(c)); }
Weight W(std::initializer_list<Rational> c) { return Weight(RVec(c)); }
RootVector Rv(std::initializer_list<Rational> c) { return RootVector(RVec(c)); }

const CheckResult& check_named(const VerificationReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    FAIL("missing check " << name);
    return r.checks.front();
}

}  // namespace

TEST_CASE("A2 with A spanned by (1,-1): frozen certificate") {
    WeylGroup weyl(RootSystem::from_kind("A2"));
    auto c = build_certificate(weyl, Subspace{{T({1, -1})}});
    // chi(t) vanishes on x1 = -x2: chi = omega1 + omega2 = alpha1 + alpha2
    CHECK(c.chi_real == W({1, 1}));
    CHECK(c.chi_dominant == W({1, 1}));
    CHECK(c.dominance_w.length() == 0);
    CHECK(c.R == 3);
    CHECK(c.p == std::vector<Integer>{1, 1});
    CHECK(c.dirichlet_scale == 1);
    CHECK(c.m == 3);
    CHECK(c.chi_prime == W({3, 3}));
    CHECK(c.d == Rv({1, 1}));
    CHECK(c.pivots == std::vector<std::size_t>{0});
    const std::set<RootVector> psi(c.psi.begin(), c.psi.end());
    CHECK(psi == std::set<RootVector>{Rv({1, 0}), Rv({1, 1})});
    REQUIRE(c.per_index.size() == 2);
    CHECK(c.per_index[0].plus == W({1, 4}));
    CHECK(c.per_index[1].plus == W({4, 1}));
    CHECK(c.per_index[0].minus == W({-1, -4}));
    CHECK(c.checks.passed());
    CHECK(check_named(c.checks, "rational_iii").status == CheckStatus::DELEGATED);
    CHECK(check_named(c.checks, "rational_iii").detail.find("structural") != std::string::npos);
}

TEST_CASE("A1xA1 with the diagonal line") {
    WeylGroup weyl(RootSystem::from_kind("A1xA1"));
    auto c = build_certificate(weyl, Subspace{{T({1, 1})}});
    CHECK(c.chi_real == W({1, -1}));
    CHECK(c.chi_dominant == W({1, 1}));
    CHECK(c.dominance_w.word == std::vector<std::size_t>{1});
    CHECK(c.frame_subspace[0] == T({1, -1}));
    CHECK(c.kept_components.size() == 2);
    CHECK(c.R == 2);
    CHECK(c.m == 3);
    CHECK(c.pivots == std::vector<std::size_t>{0, 1});
    CHECK(c.psi.size() == 2);
    CHECK(c.checks.passed());
}

TEST_CASE("A invisible to the kept factors is refused") {
    WeylGroup weyl(RootSystem::from_kind("A1xA1"));
    CHECK_THROWS_AS(build_certificate(weyl, Subspace{{T({1, 0})}}), PreconditionError);
}

TEST_CASE("size preconditions") {
    WeylGroup weyl(RootSystem::from_kind("A2"));
    CHECK_THROWS_AS(build_certificate(weyl, Subspace{}), PreconditionError);
    CHECK_THROWS_AS(build_certificate(weyl, Subspace{{T({1, 0}), T({0, 1})}}), PreconditionError);
    CHECK_THROWS_AS(build_certificate(weyl, Subspace{{T({1, 0, 0})}}), PreconditionError);
}

TEST_CASE("irrational-looking slope needs a nontrivial Dirichlet scale") {
    WeylGroup weyl(RootSystem::from_kind("A2"));
    // x2 = -(7/5) x1 gives a character with non-proportional coordinates
    auto c = build_certificate(weyl, Subspace{{T({5, -7})}});
    CHECK(c.checks.passed());
    CHECK(c.dirichlet_scale >= 1);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(abs_of(Rational(c.dirichlet_scale) * c.chi_dominant[i] - Rational(c.p[i])) < c.tolerance);
    // minimality of m: one less fails the pivot inequality
    const Rational M = weyl.system().max_simple_root_pairing();
    for (auto i : c.pivots) CHECK(Rational(c.m) * Rational(c.p[i]) > M);
    bool fails_below = false;
    for (auto i : c.pivots) fails_below = fails_below || !(Rational(c.m - 1) * Rational(c.p[i]) > M);
    CHECK(fails_below);
}

TEST_CASE("tampering is detected with a witness") {
    WeylGroup weyl(RootSystem::from_kind("A2"));
    const Subspace a{{T({1, -1})}};
    auto c = build_certificate(weyl, a);

    SUBCASE("psi missing a root") {
        c.psi.pop_back();
        auto rep = verify_hypotheses(weyl, c, a, 20);
        REQUIRE_FALSE(rep.passed());
        REQUIRE(rep.first_failure()->witness.has_value());
        CHECK(rep.first_failure()->witness->beta.has_value());
    }
    SUBCASE("m too small") {
        c.m = 1;
        c.chi_prime = c.chi_unscaled;
        auto rep = verify_hypotheses(weyl, c, a, 20);
        REQUIRE_FALSE(rep.passed());
        CHECK(rep.first_failure()->name == "chi_alpha_big");
    }
    SUBCASE("chi' scaled up breaks decay") {
        c.m = 1000;
        c.chi_prime = Rational(1000) * c.chi_unscaled;
        auto rep = verify_hypotheses(weyl, c, a, 20);
        REQUIRE_FALSE(rep.passed());
    }
    SUBCASE("wrong subspace") {
        auto rep = verify_hypotheses(weyl, c, Subspace{{T({1, 0})}}, 20);
        CHECK(rep.first_failure()->name == "chi_vanishes_on_A");
        CHECK(rep.first_failure()->witness->t.has_value());
    }
}

TEST_CASE("check_direction") {
    WeylGroup weyl(RootSystem::from_kind("A2"));
    auto c = build_certificate(weyl, Subspace{{T({1, -1})}});
    CHECK_THROWS_AS(check_direction(weyl.system(), c, T({0, 0})), PreconditionError);
    CHECK_FALSE(check_direction(weyl.system(), c, T({3, -3})).has_value());
    CHECK_FALSE(check_direction(weyl.system(), c, T({-1, 1})).has_value());
    // hand: chi' = 3(alpha1+alpha2), (chi'-alpha1)(t) at t = (1,-1) is -1 <= -1/2
    CHECK(weyl.system().evaluate(c.chi_prime - weyl.system().to_weight(Rv({1, 0})), T({1, -1})) == -1);
    // a direction off A where chi' is large fails
    auto bad = check_direction(weyl.system(), c, T({1, 1}));
    REQUIRE(bad.has_value());
    CHECK(bad->witness->l.has_value());
}

TEST_CASE("R is invariant under the Weyl group action on the fundamental weights") {
    for (const char* kind : {"A2", "B2", "G2", "A3", "B3", "C3"}) {
        CAPTURE(kind);
        WeylGroup weyl(RootSystem::from_kind(kind));
        const auto& sys = weyl.system();
        std::vector<std::size_t> idx(sys.rank());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        const Rational R = compute_R(sys, idx);
        // oracle: direct maximum of row sums
        Rational best = 0;
        for (std::size_t i = 0; i < sys.rank(); ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < sys.rank(); ++j) s += sys.pairing(sys.fundamental_weight(i), sys.fundamental_weight(j));
            best = std::max(best, s);
        }
        CHECK(R == best);
        for (const auto& w : weyl.enumerate()) {
            std::vector<Weight> moved;
            for (std::size_t i = 0; i < sys.rank(); ++i) moved.push_back(weyl.apply(w, sys.fundamental_weight(i)));
            CHECK(compute_R(sys, idx, moved) == R);
        }
    }
    CHECK(compute_R(RootSystem::from_kind("A2"), {0, 1}) == 3);
}

TEST_CASE("randomized lines and planes certify across types") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (const char* kind : {"A2", "B2", "G2", "A3", "B3", "A1xA1", "A2xA1"}) {
        CAPTURE(kind);
        WeylGroup weyl(RootSystem::from_kind(kind));
        const std::size_t n = weyl.system().rank();
        int built = 0, tries = 0;
        while (built < 6 && tries < 200) {
            ++tries;
            const std::size_t k = 1 + rng() % (n - 1);
            std::vector<TorusVector> a;
            for (std::size_t j = 0; j < k; ++j) {
                RVec v(n);
                for (auto& x : v) x = coef(rng);
                a.emplace_back(v);
            }
            std::vector<RVec> rows;
            for (const auto& v : a) rows.push_back(v.coords);
            if (linalg::rank(RMat::from_rows(rows)) != k) continue;
            DivergenceCertificate c;
            try {
                c = build_certificate(weyl, Subspace{a}, BuildOptions{50, 3});
            } catch (const PreconditionError&) {
                continue;  // A sees a dropped factor
            }
            ++built;
            CHECK(c.checks.passed());
            // chi' vanishes nowhere it should not: every kept pivot pairing is large
            for (auto i : c.pivots)
                CHECK(weyl.system().pairing(c.chi_prime, weyl.system().simple_root(i)) > c.max_pairing);
            // psi oracle: positive roots with a pivot coefficient
            std::size_t count = 0;
            for (const auto& beta : weyl.system().positive_roots()) {
                bool hit = false;
                for (auto i : c.pivots) hit = hit || beta[i] > 0;
                count += hit;
            }
            CHECK(c.psi.size() == count);
        }
        CHECK(built > 0);
    }
}

TEST_CASE("split datum entry point works in the restricted system") {
    SplitDatum d(RootSystem::from_kind("A3"), {T({1, 0, 1}), T({0, 1, 0})});
    auto c = build_certificate(d, Subspace{{T({1, -1, 1})}});
    CHECK(c.cartan == d.restricted()->system.cartan());
    CHECK(c.checks.passed());
    // not almost split: refused
    CHECK_THROWS_AS(build_certificate(d, Subspace{{T({1, 0, -1})}}), PreconditionError);
}

TEST_CASE("factor decisions") {
    SUBCASE("dim 0") {
        auto r = factor_decision(SplitDatum(RootSystem::from_kind("A2")), Subspace{});
        CHECK(r.verdict == FactorVerdict::INCONCLUSIVE);
        CHECK(r.trace.front() == "positive dimension required");
    }
    SUBCASE("line in A2") {
        auto r = factor_decision(SplitDatum(RootSystem::from_kind("A2")), Subspace{{T({1, -1})}});
        CHECK(r.verdict == FactorVerdict::NON_OBVIOUS_EXISTS);
        CHECK(r.projection_reading);
        CHECK(r.literal_reading);
        CHECK_FALSE(r.ambiguous);
    }
    SUBCASE("full torus of A2") {
        auto r = factor_decision(SplitDatum(RootSystem::from_kind("A2")), Subspace{{T({1, 0}), T({0, 1})}});
        CHECK(r.verdict == FactorVerdict::DIVERGENT_EXISTS);
    }
    SUBCASE("plane in A1xA2 with readings that differ") {
        auto r = factor_decision(SplitDatum(RootSystem::from_kind("A1xA2")), Subspace{{T({1, 1, 0}), T({0, 1, -1})}});
        CHECK(r.dim_a == 2);
        CHECK(r.rank_q == 3);
        CHECK(r.projection_reading);
        CHECK_FALSE(r.literal_reading);
        CHECK(r.ambiguous);
        CHECK(r.verdict == FactorVerdict::NON_OBVIOUS_EXISTS);
    }
    SUBCASE("not almost split is conjugated first") {
        SplitDatum d(RootSystem::from_kind("A2"), {T({1, 1})});
        auto r = factor_decision(d, Subspace{{T({1, 0}), T({0, 1})}});
        CHECK(r.verdict == FactorVerdict::INCONCLUSIVE);
    }
    SUBCASE("A3 with the symmetric split part") {
        SplitDatum d(RootSystem::from_kind("A3"), {T({1, 0, 1}), T({0, 1, 0})});
        auto r = factor_decision(d, Subspace{{T({1, 0, -1})}});
        CHECK(r.trace.front().find("conjugated") != std::string::npos);
        CHECK(r.verdict == FactorVerdict::NON_OBVIOUS_EXISTS);
    }
}
