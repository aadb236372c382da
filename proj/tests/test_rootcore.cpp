#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "rootcert/errors.hpp"
#include "rootcert/linalg.hpp"
#include "rootcert/rootcore.hpp"

using namespace rootcert;

namespace {

using IVec = std::vector<long>;
using IMat = std::vector<IVec>;

// Closure of the simple roots under simple reflections, plain integer
// arithmetic straight from the Cartan matrix.
std::set<IVec> closure_roots(const IMat& a) {
    const std::size_t n = a.size();
    std::set<IVec> roots;
    std::vector<IVec> todo;
    for (std::size_t i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        roots.insert(e);
        todo.push_back(e);
    }
    while (!todo.empty()) {
        IVec b = todo.back();
        todo.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            long pair = 0;
            for (std::size_t j = 0; j < n; ++j) pair += b[j] * a[j][i];
            IVec r = b;
            r[i] -= pair;
            if (roots.insert(r).second) todo.push_back(r);
        }
    }
    return roots;
}

std::size_t positive_count(const std::set<IVec>& roots) {
    std::size_t n = 0;
    for (const auto& r : roots) {
        bool pos = true;
        for (long c : r) pos = pos && c >= 0;
        n += pos;
    }
    return n;
}

RMat to_rmat(const IMat& m) {
    RMat out(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
    return out;
}

const IMat kA2 = {{2, -1}, {-1, 2}};
const IMat kB2 = {{2, -2}, {-1, 2}};
const IMat kG2 = {{2, -1}, {-3, 2}};
const IMat kA3 = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
const IMat kC3 = {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};

Weight W(std::initializer_list<long> c) {
    RVec v;
    for (long x : c) v.emplace_back(x);
    return Weight(v);
}
RootVector Rt(std::initializer_list<long> c) {
    RVec v;
    for (long x : c) v.emplace_back(x);
    return RootVector(v);
}

}  // namespace

TEST_CASE("positive root counts match reflection closure") {
    struct Case {
        const char* kind;
        IMat cartan;
    };
    for (const auto& c : {Case{"A2", kA2}, Case{"B2", kB2}, Case{"G2", kG2}, Case{"A3", kA3}, Case{"C3", kC3}}) {
        CAPTURE(c.kind);
        const auto sys = RootSystem::from_kind(c.kind);
        CHECK(sys.cartan() == to_rmat(c.cartan));
        const auto oracle = closure_roots(c.cartan);
        CHECK(sys.positive_roots().size() == positive_count(oracle));
        CHECK(sys.roots().size() == oracle.size());
        for (const auto& r : oracle) {
            RVec v(r.begin(), r.end());
            CHECK(sys.is_root(RootVector(v)));
        }
    }
}

TEST_CASE("A2 has three positive roots and one component") {
    const auto a2 = RootSystem::from_kind("A2");
    REQUIRE(a2.positive_roots().size() == 3);
    std::set<RootVector> got(a2.positive_roots().begin(), a2.positive_roots().end());
    CHECK(got == std::set<RootVector>{Rt({1, 0}), Rt({0, 1}), Rt({1, 1})});
    CHECK(a2.components().size() == 1);
}

TEST_CASE("A1xA1 splits into two components") {
    const auto s = RootSystem::from_kind("A1xA1");
    CHECK(s.positive_roots().size() == 2);
    CHECK(s.components().size() == 2);
    CHECK(s.component_type(0) == "A1");
    CHECK(RootSystem::from_kind("A1+A1").cartan() == s.cartan());
}

TEST_CASE("G2 off-diagonal product is 3") {
    const auto g2 = RootSystem::from_kind("G2");
    CHECK(g2.positive_roots().size() == 6);
    CHECK(g2.cartan()(0, 1) * g2.cartan()(1, 0) == 3);
}

TEST_CASE("series and exceptional sizes") {
    CHECK(RootSystem::from_kind("D4").positive_roots().size() == 12);
    CHECK(RootSystem::from_kind("F4").positive_roots().size() == 24);
    CHECK(RootSystem::from_kind("E6").positive_roots().size() == 36);
    CHECK(RootSystem::from_kind("B3").positive_roots().size() == 9);
    CHECK(RootSystem::from_kind("C3").component_type(0) == "C3");
    CHECK(RootSystem::from_kind("B2").component_type(0) == "B2");
}

TEST_CASE("bad kinds are rejected") {
    CHECK_THROWS_AS(RootSystem::from_kind("Q3"), PreconditionError);
    CHECK_THROWS_AS(RootSystem::from_kind("D3"), PreconditionError);
    CHECK_THROWS_AS(RootSystem::from_kind("E9"), PreconditionError);
    CHECK_THROWS_AS(RootSystem::from_kind("A2x"), PreconditionError);
    CHECK_THROWS_AS(RootSystem::from_kind(""), PreconditionError);
}

TEST_CASE("non-finite Cartan matrices are rejected with the minor") {
    // affine A1
    RMat aff = to_rmat({{2, -2}, {-2, 2}});
    try {
        RootSystem::from_cartan(aff);
        FAIL("accepted affine Cartan matrix");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("minor of order 2") != std::string::npos);
    }
    CHECK_THROWS_AS(RootSystem::from_cartan(to_rmat({{2, 1}, {1, 2}})), DomainError);
    CHECK_THROWS_AS(RootSystem::from_cartan(to_rmat({{2, -1}, {0, 2}})), DomainError);
    CHECK_THROWS_AS(RootSystem::from_cartan(to_rmat({{3, -1}, {-1, 2}})), DomainError);
    // hyperbolic rank 3
    CHECK_THROWS_AS(RootSystem::from_cartan(to_rmat({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}})), DomainError);
}

TEST_CASE("from_cartan matches from_kind") {
    CHECK(RootSystem::from_cartan(to_rmat(kG2)).inner_form() == RootSystem::from_kind("G2").inner_form());
    CHECK(RootSystem::from_cartan(to_rmat(kC3)).component_type(0) == "C3");
}

TEST_CASE("pairing examples in A2") {
    const auto a2 = RootSystem::from_kind("A2");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(a2.pairing(a2.fundamental_weight(i), a2.simple_root(j)) == Rational(i == j ? 1 : 0));
    for (const auto& b : a2.roots()) CHECK(a2.pairing(b, b) == 2);
    CHECK(a2.pairing(W({1, 0}), W({0, 1})) == 1);
    CHECK(a2.pairing(W({1, 0}), W({1, 0})) == 2);
    CHECK_THROWS_AS(a2.pairing(W({1, 0}), W({0, 0})), DomainError);
    CHECK_THROWS_AS(a2.pairing(W({1, 0}), Rt({0, 0})), DomainError);
}

TEST_CASE("pairing is normalized by the second argument") {
    const auto b2 = RootSystem::from_kind("B2");
    // alpha_1 long, alpha_2 short
    CHECK(b2.pairing(b2.simple_root(0), b2.simple_root(1)) == -2);
    CHECK(b2.pairing(b2.simple_root(1), b2.simple_root(0)) == -1);
}

TEST_CASE("inner form scaling does not change pairings") {
    const auto g2 = RootSystem::from_kind("G2");
    RMat scaled = g2.inner_form();
    scaled *= Rational(7, 5);
    const auto g2s = RootSystem::from_inner_form(scaled, "G2s");
    CHECK(g2s.cartan() == g2.cartan());
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int k = 0; k < 50; ++k) {
        Weight a = W({d(rng), d(rng)}), b = W({d(rng), d(rng)});
        if (b.is_zero()) continue;
        CHECK(g2.pairing(a, b) == g2s.pairing(a, b));
    }
}

TEST_CASE("reflection examples") {
    const auto a2 = RootSystem::from_kind("A2");
    for (const auto& b : a2.roots()) CHECK(a2.reflect(b, b) == -b);
    CHECK(a2.reflect(W({1, 0}), Rt({1, 0})) == W({-1, 1}));
    CHECK_THROWS_AS(a2.reflect(W({1, 0}), Rt({2, 0})), DomainError);
    CHECK(a2.simple_reflect(W({1, 0}), 0) == W({-1, 1}));
}

TEST_CASE("evaluation examples") {
    const auto a2 = RootSystem::from_kind("A2");
    TorusVector t(RVec{1, -1});
    CHECK(a2.evaluate(W({1, 0}), t) == Rational(1, 3));
    CHECK(a2.evaluate(W({0, 0}), t) == 0);
    TorusVector u(RVec{Rational(2, 7), Rational(-5)});
    for (std::size_t i = 0; i < 2; ++i) CHECK(a2.evaluate(a2.simple_root(i), u) == u[i]);
}

TEST_CASE("basis change round trip") {
    const auto c3 = RootSystem::from_kind("C3");
    for (const auto& b : c3.roots()) CHECK(c3.to_roots(c3.to_weight(b)) == b);
    CHECK(c3.to_weight(c3.simple_root(0)).coords == c3.cartan().row(0));
}

TEST_CASE("highest roots") {
    CHECK(RootSystem::from_kind("A2").highest_root(0) == Rt({1, 1}));
    CHECK(RootSystem::from_kind("A1").highest_root(0) == Rt({1}));
    CHECK(RootSystem::from_kind("G2").highest_root(0) == Rt({3, 2}));
    CHECK(RootSystem::from_kind("B3").highest_root(0) == Rt({1, 2, 2}));
    const auto s = RootSystem::from_kind("A2xA1");
    CHECK(s.highest_root(1) == Rt({0, 0, 1}));
}

TEST_CASE("structural properties across systems") {
    for (const char* kind : {"A1", "A2", "B2", "G2", "A3", "C3", "B3", "D4", "A2xA1", "F4"}) {
        CAPTURE(kind);
        const auto s = RootSystem::from_kind(kind);
        const auto roots = s.roots();
        const std::set<RootVector> rootset(roots.begin(), roots.end());
        for (const auto& b : roots) {
            std::set<RootVector> image;
            for (const auto& g : roots) {
                CHECK(s.pairing(g, b) == Rational(floor_of(s.pairing(g, b))));
                image.insert(s.reflect(g, b));
            }
            CHECK(image == rootset);
        }
        for (std::size_t i = 0; i < s.rank(); ++i)
            for (std::size_t j = 0; j < s.rank(); ++j)
                if (s.component_of(i) != s.component_of(j)) CHECK(s.inner_form()(i, j) == 0);
        for (std::size_t c = 0; c < s.components().size(); ++c) {
            const auto top = s.highest_root(c);
            for (const auto& b : s.positive_roots())
                if (s.component_of([&] {
                        for (std::size_t i = 0; i < b.size(); ++i)
                            if (sgn(b[i]) != 0) return i;
                        return std::size_t{0};
                    }()) == c)
                    CHECK(RootSystem::dominates(top, b));
        }
    }
}

TEST_CASE("reflection is an involution on random weights") {
    const auto b3 = RootSystem::from_kind("B3");
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int k = 0; k < 100; ++k) {
        Weight chi = W({d(rng), d(rng), d(rng)});
        for (const auto& b : b3.positive_roots()) CHECK(b3.reflect(b3.reflect(chi, b), b) == chi);
    }
}

TEST_CASE("positive root ordering is by height") {
    const auto s = RootSystem::from_kind("A3");
    const auto& pos = s.positive_roots();
    for (std::size_t i = 1; i < pos.size(); ++i) CHECK(RootSystem::height(pos[i - 1]) <= RootSystem::height(pos[i]));
}

TEST_CASE("max simple root pairing") {
    CHECK(RootSystem::from_kind("A2").max_simple_root_pairing() == 2);
    CHECK(RootSystem::from_kind("B2").max_simple_root_pairing() == 2);
    CHECK(RootSystem::from_kind("G2").max_simple_root_pairing() == 3);
}
