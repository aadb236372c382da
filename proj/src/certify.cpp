#include "rootcert/certify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "rootcert/diophantine.hpp"
#include "rootcert/errors.hpp"
#include "rootcert/linalg.hpp"

namespace rootcert {

namespace {

constexpr std::size_t kMaxScaleRounds = 64;

std::string str(const RVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
    os << ')';
    return os.str();
}

std::string word_str(const std::vector<std::size_t>& w) {
    if (w.empty()) return "id";
    std::string s;
    for (auto i : w) s += "s" + std::to_string(i + 1);
    return s;
}

CheckResult passed(std::string name, std::string detail = {}) {
    return {std::move(name), CheckStatus::PASSED, std::move(detail), std::nullopt};
}

CheckResult failed(std::string name, std::string detail, Witness w = {}) {
    return {std::move(name), CheckStatus::FAILED, std::move(detail), std::move(w)};
}

std::size_t restricted_rank(const std::vector<TorusVector>& vs, const std::vector<std::size_t>& idx) {
    if (vs.empty() || idx.empty()) return 0;
    std::vector<RVec> rows;
    for (const auto& v : vs) {
        RVec r;
        for (auto i : idx) r.push_back(v[i]);
        rows.push_back(std::move(r));
    }
    return linalg::rank(RMat::from_rows(rows));
}

std::vector<std::size_t> kept_components_of(const RootSystem& sys, const Weight& b) {
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < sys.components().size(); ++c) {
        bool nz = false;
        for (auto i : sys.components()[c]) nz = nz || sgn(b[i]) != 0;
        if (nz) kept.push_back(c);
    }
    return kept;
}

std::vector<std::size_t> indices_of(const RootSystem& sys, const std::vector<std::size_t>& comps) {
    std::vector<std::size_t> idx;
    for (auto c : comps) idx.insert(idx.end(), sys.components()[c].begin(), sys.components()[c].end());
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Decay tolerance: |chi'(t)| <= m tol S max|x| must stay below
// (g_min / (2G)) max|x|, where g are the root coordinates of b.
Rational decay_tolerance(const RootSystem& sys, const Weight& b, const std::vector<std::size_t>& kept,
                         const Integer& m) {
    const RootVector g = sys.to_roots(b);
    Rational gsum = 0, gmin = 0, ssum = 0;
    bool first = true;
    for (auto i : kept) {
        gsum += g[i];
        if (first || g[i] < gmin) gmin = g[i];
        first = false;
        for (std::size_t k = 0; k < sys.rank(); ++k) ssum += sys.fundamental_in_roots()(i, k);
    }
    return gmin / (2 * Rational(m) * ssum * gsum);
}

std::vector<std::size_t> choose_pivots(const RootSystem& sys, const std::vector<std::size_t>& comps,
                                       const std::vector<Integer>& p) {
    std::vector<std::size_t> piv;
    for (auto c : comps) {
        std::size_t best = sys.components()[c].front();
        for (auto i : sys.components()[c])
            if (p[i] > p[best]) best = i;
        piv.push_back(best);
    }
    return piv;
}

std::vector<RootVector> psi_of(const RootSystem& sys, const std::vector<std::size_t>& pivots) {
    std::vector<RootVector> psi;
    for (const auto& beta : sys.positive_roots()) {
        bool in = false;
        for (auto i : pivots) in = in || beta[i] >= 1;
        if (in) psi.push_back(beta);
    }
    return psi;
}

TorusVector normalize_direction(const TorusVector& t, const std::vector<std::size_t>& kept) {
    Rational mx = 0;
    bool first = true;
    for (auto i : kept)
        if (first || t[i] > mx) {
            mx = t[i];
            first = false;
        }
    if (sgn(mx) <= 0) return t;
    return Rational(1 / mx) * t;
}

}  // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::PASSED: return "PASSED";
        case CheckStatus::FAILED: return "FAILED";
        case CheckStatus::DELEGATED: return "DELEGATED";
    }
    return "?";
}

const char* to_string(FactorVerdict v) {
    switch (v) {
        case FactorVerdict::NON_OBVIOUS_EXISTS: return "NON_OBVIOUS_EXISTS";
        case FactorVerdict::DIVERGENT_EXISTS: return "DIVERGENT_EXISTS";
        case FactorVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::FAILED; }));
}

const CheckResult* VerificationReport::first_failure() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::FAILED) return &c;
    return nullptr;
}

Rational compute_R(const RootSystem& system, const std::vector<std::size_t>& indices,
                   const std::vector<Weight>& fundamentals) {
    auto chi = [&](std::size_t i) { return fundamentals.empty() ? system.fundamental_weight(i) : fundamentals.at(i); };
    Rational best = 0;
    bool first = true;
    for (auto i : indices) {
        Rational s = 0;
        for (auto j : indices) s += system.pairing(chi(i), chi(j));
        if (first || s > best) best = s;
        first = false;
    }
    return best;
}

Subspace relative_subspace(const SplitDatum& d, const Subspace& a) {
    const auto dec = decompose(a, d);
    if (!dec.ani.trivial())
        throw PreconditionError("subspace has an anisotropic part of dimension " + std::to_string(dec.ani.dim()) +
                                "; conjugate it to almost split form first");
    Subspace rel;
    rel.snapped = a.snapped;
    for (const auto& v : a.basis) rel.basis.push_back(d.to_relative(v));
    return rel;
}

DivergenceCertificate build_certificate(const WeylGroup& weyl, const Subspace& a, const BuildOptions& opt) {
    const auto& sys = weyl.system();
    const std::size_t n = sys.rank();
    validate_subspace(a, n);
    if (a.trivial()) throw PreconditionError("certificate needs a subspace of positive dimension");
    if (a.dim() >= n)
        throw PreconditionError("certificate needs dim A < rank (" + std::to_string(a.dim()) + " >= " +
                                std::to_string(n) + ")");

    DivergenceCertificate c;
    c.system_label = sys.label();
    c.cartan = sys.cartan();
    c.subspace = a.basis;

    // (1) character vanishing on A
    c.chi_real = q_character_vanishing_on(a, SplitDatum(sys));

    // dominance first, on the real character, so that rounding keeps p >= 0
    std::tie(c.chi_dominant, c.dominance_w) = weyl.dominate(c.chi_real);
    for (const auto& v : a.basis) c.frame_subspace.push_back(weyl.act(c.dominance_w, v));
    const Weight& b = c.chi_dominant;

    // (2) drop components orthogonal to the character
    c.kept_components = kept_components_of(sys, b);
    for (std::size_t k = 0; k < sys.components().size(); ++k)
        if (std::find(c.kept_components.begin(), c.kept_components.end(), k) == c.kept_components.end())
            c.dropped_components.push_back(k);
    c.kept_indices = indices_of(sys, c.kept_components);
    if (restricted_rank(c.frame_subspace, c.kept_indices) != a.dim())
        throw PreconditionError("A has a direction on which every factor seen by the character is trivial");

    const RootVector g = sys.to_roots(b);
    for (auto i : c.kept_indices)
        if (sgn(g[i]) <= 0) throw InvariantError("dominant character has a non-positive root coordinate");

    // (3) R
    c.R = compute_R(sys, c.kept_indices);
    const std::size_t r = c.kept_indices.size();
    const Rational r_tol = 1 / (2 * c.R * static_cast<long>(r));
    c.max_pairing = sys.max_simple_root_pairing(c.kept_indices);

    // (4), (7), (8): rationalize and pick the minimal scaling m; the tolerance
    // depends on m, so iterate until the required m stops growing.
    c.m = 1;
    for (std::size_t round = 0;; ++round) {
        if (round >= kMaxScaleRounds) throw InvariantError("scaling loop did not settle");
        const Rational tol = std::min(r_tol, decay_tolerance(sys, b, c.kept_indices, c.m));
        const auto rat = rationalize(b.coords, tol);
        const auto piv = choose_pivots(sys, c.kept_components, rat.p);
        Integer pmin = rat.p[piv.front()];
        for (auto i : piv) pmin = std::min(pmin, rat.p[i]);
        if (pmin <= 0) throw InvariantError("pivot coordinate is not positive");
        const Integer need = floor_of(c.max_pairing / Rational(pmin)) + 1;
        if (need <= c.m) {
            c.m = need;
            c.tolerance = tol;
            c.p = rat.p;
            c.dirichlet_scale = rat.scale;
            c.Q = rat.Q;
            c.pivots = piv;
            break;
        }
        c.m = need;
    }

    // (5), (6)
    RVec pv;
    for (const auto& x : c.p) pv.emplace_back(x);
    c.chi_unscaled = Weight(pv);
    c.d = sys.to_roots(c.chi_unscaled);
    for (auto i : c.kept_indices)
        if (sgn(c.d[i]) <= 0)
            throw InvariantError("root coordinate d_" + std::to_string(i + 1) + " of the rounded character is " +
                                 to_string(c.d[i]));
    c.chi_prime = Rational(c.m) * c.chi_unscaled;

    // (9)
    c.psi = psi_of(sys, c.pivots);

    // (10)
    for (auto i : c.kept_indices) {
        IndexWeights iw;
        iw.index = i;
        iw.plus = c.chi_prime - sys.to_weight(sys.simple_root(i));
        std::tie(iw.plus_dominant, iw.w) = weyl.dominate(iw.plus);
        iw.minus = -iw.plus;
        iw.minus_lowest = -iw.plus_dominant;
        c.per_index.push_back(std::move(iw));
    }

    // (11)
    c.checks = verify_hypotheses(weyl, c, a, opt.trials, opt.seed);
    return c;
}

DivergenceCertificate build_certificate(const SplitDatum& d, const Subspace& a, const BuildOptions& opt) {
    const auto& q = d.require_restricted();
    const Subspace rel = relative_subspace(d, a);
    if (rel.dim() >= q.system.rank())
        throw PreconditionError("certificate needs dim A < rank_Q (" + std::to_string(rel.dim()) +
                                " >= " + std::to_string(q.system.rank()) + ")");
    WeylGroup weyl(q.system);
    return build_certificate(weyl, rel, opt);
}

std::optional<CheckResult> check_direction(const RootSystem& sys, const DivergenceCertificate& c,
                                           const TorusVector& t) {
    if (t.size() != sys.rank()) throw PreconditionError("direction has wrong length");
    if (t.is_zero()) throw PreconditionError("t = 0 is not an unbounded direction");
    bool seen = false;
    for (auto i : c.kept_indices) seen = seen || sgn(t[i]) != 0;
    if (!seen) throw PreconditionError("direction is trivial on every kept factor");

    const TorusVector u = normalize_direction(t, c.kept_indices);
    std::size_t ell = c.kept_indices.front(), j = c.kept_indices.front();
    for (auto i : c.kept_indices) {
        if (u[i] > u[ell]) ell = i;
        if (u[i] < u[j]) j = i;
    }
    if (sgn(u[ell]) <= 0 || sgn(u[j]) >= 0)
        return failed("decay", "direction does not separate the simple roots (max " + to_string(u[ell]) + ", min " +
                                   to_string(u[j]) + ")",
                      Witness{u, ell, std::nullopt});
    const Weight plus_l = c.chi_prime - sys.to_weight(sys.simple_root(ell));
    const Rational up = sys.evaluate(plus_l, u);
    if (!(up <= -u[ell] / 2))
        return failed("decay", "(chi' - alpha_l)(t) = " + to_string(up) + " exceeds -alpha_l(t)/2 = " +
                                   to_string(Rational(-u[ell] / 2)),
                      Witness{u, ell, std::nullopt});
    const Weight minus_j = sys.to_weight(sys.simple_root(j)) - c.chi_prime;
    const Rational down = sys.evaluate(minus_j, u);
    if (!(down <= u[j] / 2))
        return failed("decay", "-(chi' - alpha_j)(t) = " + to_string(down) + " exceeds alpha_j(t)/2 = " +
                                   to_string(Rational(u[j] / 2)),
                      Witness{u, j, std::nullopt});
    return std::nullopt;
}

VerificationReport verify_hypotheses(const WeylGroup& weyl, const DivergenceCertificate& c, const Subspace& a,
                                     std::size_t trials, std::uint64_t seed) {
    const auto& sys = weyl.system();
    VerificationReport rep;
    rep.trials = trials;
    rep.seed = seed;
    auto& out = rep.checks;

    if (!(c.cartan == sys.cartan())) {
        out.push_back(failed("system", "certificate was built for a different Cartan matrix"));
        return rep;
    }
    out.push_back(passed("system", c.system_label));

    // chi vanishes on A
    {
        CheckResult res = passed("chi_vanishes_on_A");
        for (const auto& v : a.basis)
            if (res.status == CheckStatus::PASSED && sgn(sys.evaluate(c.chi_real, v)) != 0)
                res = failed("chi_vanishes_on_A", "chi(t) = " + to_string(sys.evaluate(c.chi_real, v)),
                             Witness{v, std::nullopt, std::nullopt});
        if (res.status == CheckStatus::PASSED && a.basis != c.subspace)
            res = failed("chi_vanishes_on_A", "subspace differs from the certified one");
        if (res.status == CheckStatus::PASSED && c.chi_real.is_zero())
            res = failed("chi_vanishes_on_A", "character is zero");
        out.push_back(std::move(res));
    }

    // dominance
    {
        CheckResult res = passed("dominance", "w = " + word_str(c.dominance_w.word));
        if (!(weyl.from_word(c.dominance_w.word).matrix == c.dominance_w.matrix) ||
            weyl.apply(c.dominance_w, c.chi_real) != c.chi_dominant)
            res = failed("dominance", "dominance element does not map chi to b");
        for (std::size_t i = 0; i < sys.rank() && res.status == CheckStatus::PASSED; ++i)
            if (sgn(c.chi_dominant[i]) < 0)
                res = failed("dominance", "b_" + std::to_string(i + 1) + " < 0", Witness{std::nullopt, i, std::nullopt});
        if (res.status == CheckStatus::PASSED) {
            bool same = c.frame_subspace.size() == a.basis.size();
            for (std::size_t k = 0; same && k < a.basis.size(); ++k)
                same = weyl.act(c.dominance_w, a.basis[k]) == c.frame_subspace[k];
            if (!same) res = failed("dominance", "frame subspace is not the image of A");
        }
        out.push_back(std::move(res));
    }

    // components
    {
        CheckResult res = passed("components");
        if (kept_components_of(sys, c.chi_dominant) != c.kept_components ||
            indices_of(sys, c.kept_components) != c.kept_indices)
            res = failed("components", "kept components do not match the support of b");
        else if (c.kept_components.empty())
            res = failed("components", "no component is kept");
        else if (restricted_rank(c.frame_subspace, c.kept_indices) != a.dim())
            res = failed("components", "A has a direction trivial on every kept factor");
        out.push_back(std::move(res));
    }
    if (rep.failures() > 0) return rep;

    const std::size_t r = c.kept_indices.size();
    const Weight& b = c.chi_dominant;

    // R
    {
        const Rational R = compute_R(sys, c.kept_indices);
        out.push_back(R == c.R ? passed("R", to_string(R))
                               : failed("R", "recomputed R = " + to_string(R) + ", certificate has " + to_string(c.R)));
    }

    // rationalization
    {
        CheckResult res = passed("rationalization", "scale " + to_string(c.dirichlet_scale));
        const Rational r_tol = 1 / (2 * c.R * static_cast<long>(r));
        const Rational d_tol = decay_tolerance(sys, b, c.kept_indices, c.m);
        if (c.p.size() != sys.rank() || sgn(c.dirichlet_scale) <= 0)
            res = failed("rationalization", "malformed p or scale");
        else if (c.tolerance > r_tol || c.tolerance > d_tol)
            res = failed("rationalization", "tolerance " + to_string(c.tolerance) + " exceeds min(" +
                                                to_string(r_tol) + ", " + to_string(d_tol) + ")");
        for (std::size_t i = 0; i < c.p.size() && res.status == CheckStatus::PASSED; ++i) {
            const Rational err = abs_of(Rational(c.dirichlet_scale) * b[i] - Rational(c.p[i]));
            const Witness w{std::nullopt, i, std::nullopt};
            if (!(err < c.tolerance))
                res = failed("rationalization", "|q b_i - p_i| = " + to_string(err) + " not below the tolerance", w);
            else if (c.p[i] < 0)
                res = failed("rationalization", "p_" + std::to_string(i + 1) + " < 0", w);
            else if (sgn(b[i]) != 0 && c.p[i] == 0)
                res = failed("rationalization", "p_" + std::to_string(i + 1) + " = 0 while b_i != 0", w);
        }
        out.push_back(std::move(res));
    }

    // d_i > 0 and chi'
    {
        CheckResult res = passed("d_positive");
        RVec pv;
        for (const auto& x : c.p) pv.emplace_back(x);
        const Weight unscaled(pv);
        if (unscaled != c.chi_unscaled || c.d != sys.to_roots(unscaled))
            res = failed("d_positive", "d does not match the rounded character");
        for (auto i : c.kept_indices)
            if (res.status == CheckStatus::PASSED && sgn(c.d[i]) <= 0)
                res = failed("d_positive", "d_" + std::to_string(i + 1) + " = " + to_string(c.d[i]),
                             Witness{std::nullopt, i, std::nullopt});
        out.push_back(std::move(res));
        out.push_back(c.chi_prime == Rational(c.m) * unscaled && c.m >= 1
                          ? passed("chi_prime", "m = " + to_string(c.m))
                          : failed("chi_prime", "chi' is not m * sum p_i chi_i"));
    }

    // pivots
    {
        CheckResult res = passed("pivots");
        if (c.pivots.size() != c.kept_components.size()) res = failed("pivots", "need one pivot per kept component");
        for (std::size_t k = 0; k < c.pivots.size() && res.status == CheckStatus::PASSED; ++k) {
            const auto i = c.pivots[k];
            if (i >= sys.rank() || sys.component_of(i) != c.kept_components[k] || c.p[i] <= 0)
                res = failed("pivots", "pivot " + std::to_string(i + 1) + " is not a positive coordinate of its component",
                             Witness{std::nullopt, i, std::nullopt});
        }
        out.push_back(std::move(res));
    }
    if (rep.failures() > 0) return rep;

    // <chi', alpha_{i_j}> > <alpha_l, beta>
    {
        const Rational M = sys.max_simple_root_pairing(c.kept_indices);
        CheckResult res = passed("chi_alpha_big", "max <alpha_l, beta> = " + to_string(M));
        for (auto i : c.pivots) {
            const Rational v = sys.pairing(c.chi_prime, sys.simple_root(i));
            if (!(v > M)) {
                res = failed("chi_alpha_big", "<chi', alpha_" + std::to_string(i + 1) + "> = " + to_string(v) +
                                                  " is not above " + to_string(M),
                             Witness{std::nullopt, i, std::nullopt});
                break;
            }
        }
        out.push_back(std::move(res));
    }

    // Psi
    {
        const auto expect = psi_of(sys, c.pivots);
        const std::set<RootVector> have(c.psi.begin(), c.psi.end());
        const std::set<RootVector> want(expect.begin(), expect.end());
        CheckResult res = passed("psi", std::to_string(want.size()) + " roots");
        for (const auto& beta : want)
            if (!have.count(beta)) {
                res = failed("psi", "root " + str(beta.coords) + " is missing from Psi",
                             Witness{std::nullopt, std::nullopt, beta});
                break;
            }
        if (res.status == CheckStatus::PASSED)
            for (const auto& beta : have)
                if (!want.count(beta)) {
                    res = failed("psi", "Psi contains " + str(beta.coords) + " which dominates no pivot",
                                 Witness{std::nullopt, std::nullopt, beta});
                    break;
                }
        out.push_back(std::move(res));

        CheckResult closed = passed("psi_closed");
        for (const auto& x : have) {
            for (const auto& y : have) {
                const RootVector s = x + y;
                if (sys.is_root(s) && !have.count(s)) {
                    closed = failed("psi_closed", "Psi is not closed: " + str(s.coords) + " is missing",
                                    Witness{std::nullopt, std::nullopt, s});
                    break;
                }
            }
            if (closed.status == CheckStatus::FAILED) break;
        }
        out.push_back(std::move(closed));
    }

    // per-index weight data
    {
        CheckResult res = passed("per_index");
        if (c.per_index.size() != r) res = failed("per_index", "one entry per kept index expected");
        for (std::size_t k = 0; k < c.per_index.size() && res.status == CheckStatus::PASSED; ++k) {
            const auto& iw = c.per_index[k];
            const Witness w{std::nullopt, iw.index, std::nullopt};
            if (iw.index != c.kept_indices[k] ||
                iw.plus != c.chi_prime - sys.to_weight(sys.simple_root(iw.index)) || iw.minus != -iw.plus)
                res = failed("per_index", "weights are not +-(chi' - alpha_i)", w);
            else if (weyl.apply(iw.w, iw.plus) != iw.plus_dominant || iw.minus_lowest != -iw.plus_dominant)
                res = failed("per_index", "dominant conjugate does not match", w);
            else
                for (std::size_t i = 0; i < sys.rank(); ++i)
                    if (sgn(iw.plus_dominant[i]) < 0) {
                        res = failed("per_index", "conjugate is not dominant", w);
                        break;
                    }
        }
        out.push_back(std::move(res));
    }
    if (rep.failures() > 0) return rep;

    // (i) decay on random directions of the dominated frame
    {
        CheckResult res = passed("decay_i", std::to_string(trials) + " directions");
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coef(-5, 5);
        for (std::size_t k = 0; k < trials; ++k) {
            TorusVector t;
            do {
                t = TorusVector::zero(sys.rank());
                for (const auto& v : c.frame_subspace) t = t + Rational(coef(rng)) * v;
            } while (t.is_zero());
            if (auto f = check_direction(sys, c, t)) {
                res = *f;
                res.name = "decay_i";
                res.detail = "trial " + std::to_string(k) + ": " + res.detail;
                break;
            }
        }
        out.push_back(std::move(res));
    }

    // (ii) surrogate: <chi' - alpha_l, beta> >= 0 and the non-weight verdict
    {
        CheckResult res = passed("invariance_ii");
        for (const auto& iw : c.per_index) {
            const WeylElement winv = weyl.inverse(iw.w);
            for (const auto& beta : c.psi) {
                const Rational v = sys.pairing(iw.plus, beta);
                const Witness w{std::nullopt, iw.index, beta};
                if (sgn(v) < 0) {
                    res = failed("invariance_ii", "<chi' - alpha_l, beta> = " + to_string(v), w);
                } else if (nonweight_check(weyl, iw.plus_dominant, winv, beta) !=
                           NonWeightVerdict::GUARANTEED_NOT_WEIGHT) {
                    res = failed("invariance_ii", "chi' - alpha_l + beta may be a weight", w);
                }
                if (res.status == CheckStatus::FAILED) break;
            }
            if (res.status == CheckStatus::FAILED) break;
        }
        out.push_back(std::move(res));
    }

    out.push_back({"rational_iii", CheckStatus::DELEGATED, "structural: U+- come from the closed root set +-Psi",
                   std::nullopt});
    out.push_back({"torus_iv", CheckStatus::DELEGATED, "structural: T normalizes the root groups of +-Psi",
                   std::nullopt});
    out.push_back({"root_spaces_v", CheckStatus::DELEGATED, "structural: Lie(U+-) is a sum of full root spaces",
                   std::nullopt});
    {
        std::set<std::size_t> comps;
        for (auto i : c.pivots) comps.insert(sys.component_of(i));
        out.push_back(comps.size() == c.kept_components.size()
                          ? passed("generation_vi", "every kept factor carries a pivot")
                          : failed("generation_vi", "some kept factor has no pivot"));
    }
    return rep;
}

FactorReport factor_decision(const SplitDatum& d, const Subspace& a) {
    FactorReport rep;
    validate_subspace(a, d.ambient().rank());
    rep.dim_a = a.dim();
    rep.rank_q = d.rank_q();
    if (a.trivial()) {
        rep.trace.push_back("positive dimension required");
        return rep;
    }
    if (!d.restricted()) {
        rep.trace.push_back(d.restricted_error());
        return rep;
    }
    if (a.dim() > d.rank_q()) {
        rep.trace.push_back("dim A = " + std::to_string(a.dim()) + " exceeds rank_Q = " + std::to_string(d.rank_q()));
        return rep;
    }
    Subspace split = a;
    if (!decompose(a, d).ani.trivial()) {
        const auto res = make_almost_split(a, d);
        split = res.image;
        rep.trace.push_back("conjugated to almost split form by " + word_str(res.w.word));
    }
    const Subspace rel = relative_subspace(d, split);
    const auto& q = d.restricted()->system;
    std::size_t min_rank = q.rank();
    rep.projection_reading = true;
    bool divergent = true;
    for (std::size_t c = 0; c < q.components().size(); ++c) {
        FactorComponent fc;
        fc.index = c;
        fc.type = q.component_type(c);
        fc.rank = q.components()[c].size();
        fc.projection_dim = restricted_rank(rel.basis, q.components()[c]);
        min_rank = std::min(min_rank, fc.rank);
        if (fc.projection_dim > fc.rank) rep.projection_reading = false;
        if (fc.projection_dim > 0 && fc.projection_dim > fc.rank) divergent = false;
        rep.trace.push_back("factor " + std::to_string(c + 1) + " (" + fc.type + "): projection dimension " +
                            std::to_string(fc.projection_dim) + " of rank " + std::to_string(fc.rank));
        rep.components.push_back(std::move(fc));
    }
    rep.literal_reading = rep.dim_a <= min_rank;
    rep.ambiguous = rep.projection_reading != rep.literal_reading;
    const bool strict = rep.dim_a < rep.rank_q;
    if (rep.ambiguous)
        rep.trace.push_back(std::string("readings differ: per-factor projection bound ") +
                            (rep.projection_reading ? "holds" : "fails") + ", dim A <= smallest factor rank " +
                            (rep.literal_reading ? "holds" : "fails"));
    if (strict && rep.projection_reading) {
        rep.verdict = FactorVerdict::NON_OBVIOUS_EXISTS;
        rep.trace.push_back("0 < dim A < rank_Q and every projection is within its factor rank");
    } else if (divergent) {
        rep.verdict = FactorVerdict::DIVERGENT_EXISTS;
        rep.trace.push_back(strict ? "per-factor projection bound fails"
                                   : "dim A = rank_Q is not below rank_Q; every factor with positive projection has "
                                     "0 < dim <= rank");
    } else {
        rep.trace.push_back("a factor projection exceeds its rank");
    }
    return rep;
}

}  // namespace rootcert
