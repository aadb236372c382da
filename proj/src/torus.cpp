#include "rootcert/torus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rootcert/errors.hpp"
#include "rootcert/linalg.hpp"

namespace rootcert {

namespace {

RMat columns_of(const std::vector<TorusVector>& vs, std::size_t n) {
    RMat m(n, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
    return m;
}

std::vector<TorusVector> combine(const RMat& cols, const std::vector<RVec>& coeffs) {
    std::vector<TorusVector> out;
    for (const auto& c : coeffs) out.emplace_back(cols * c);
    return out;
}

bool parallel_not_opposite(const RVec& a, const RVec& b) {
    // a = c b with c != +-1
    std::size_t k = 0;
    while (k < b.size() && sgn(b[k]) == 0) ++k;
    if (k == b.size()) return false;
    const Rational c = a[k] / b[k];
    if (c == 1 || c == -1) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != c * b[i]) return false;
    return true;
}

}  // namespace

void validate_subspace(const Subspace& a, std::size_t n) {
    for (const auto& v : a.basis)
        if (v.size() != n)
            throw PreconditionError("subspace vector has length " + std::to_string(v.size()) + ", expected " +
                                    std::to_string(n));
    if (a.basis.empty()) return;
    std::vector<RVec> rows;
    for (const auto& v : a.basis) rows.push_back(v.coords);
    if (linalg::rank(RMat::from_rows(rows)) != rows.size())
        throw PreconditionError("subspace basis is linearly dependent");
}

SplitDatum::SplitDatum(RootSystem ambient, std::vector<TorusVector> split_basis)
    : ambient_(std::move(ambient)), split_(std::move(split_basis)) {
    const std::size_t n = ambient_.rank();
    if (split_.empty())
        for (std::size_t i = 0; i < n; ++i) split_.push_back(TorusVector::unit(n, i));
    validate_subspace(Subspace{split_, false}, n);

    gram_ = linalg::inverse(ambient_.inner_form());
    const RMat s = columns_of(split_, n);
    const RMat gs = gram_ * s;
    aniso_ = combine(RMat::identity(n), linalg::nullspace(gs.transpose()));
    proj_ = s * linalg::inverse(s.transpose() * gs) * gs.transpose();
    build_restricted();
}

Rational SplitDatum::torus_inner(const TorusVector& a, const TorusVector& b) const {
    return dot(a.coords, gram_ * b.coords);
}

TorusVector SplitDatum::coroot_vector(const RootVector& beta) const {
    return TorusVector(ambient_.inner_form() * beta.coords);
}

TorusVector SplitDatum::project(const TorusVector& t) const { return TorusVector(proj_ * t.coords); }

const RestrictedRoots& SplitDatum::require_restricted() const {
    if (!restricted_) throw DomainError(restricted_error_);
    return *restricted_;
}

void SplitDatum::build_restricted() {
    const std::size_t k = split_.size();
    std::set<RVec> proj;
    for (const auto& beta : ambient_.positive_roots()) {
        TorusVector v = project(coroot_vector(beta));
        if (v.is_zero()) continue;
        proj.insert(v.coords);
        proj.insert(neg(v.coords));
    }
    if (proj.empty()) {
        restricted_error_ = "no ambient root restricts non-trivially to the split part";
        return;
    }
    for (const auto& a : proj)
        for (const auto& b : proj)
            if (parallel_not_opposite(a, b)) {
                restricted_error_ = "restricted root system is not reduced";
                return;
            }

    // Positivity from a generic vector of the split part.
    TorusVector h = project(TorusVector(RVec(ambient_.rank(), Rational(1))));
    for (std::size_t attempt = 1;; ++attempt) {
        bool generic = !h.is_zero();
        for (const auto& v : proj) generic = generic && sgn(torus_inner(TorusVector(v), h)) != 0;
        if (generic) break;
        if (attempt > 1000) throw InvariantError("no generic vector found in the split part");
        for (std::size_t j = 0; j < k; ++j)
            h = h + Rational(1, static_cast<long>(attempt * (j + 2) + j * j + 1)) * split_[j];
    }
    std::set<RVec> positive;
    for (const auto& v : proj)
        if (sgn(torus_inner(TorusVector(v), h)) > 0) positive.insert(v);

    std::vector<RVec> simple;
    for (const auto& v : positive) {
        bool decomposable = false;
        for (const auto& u : positive) {
            if (u == v) continue;
            if (positive.count(sub(v, u))) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simple.push_back(v);
    }
    if (simple.size() != k) {
        restricted_error_ = "restricted roots have " + std::to_string(simple.size()) +
                            " simple roots but the split part has dimension " + std::to_string(k);
        return;
    }
    // Order by root coordinates, lexicographically descending; the identity
    // when the whole torus is split.
    std::sort(simple.begin(), simple.end(),
              [this](const RVec& a, const RVec& b) { return (gram_ * b) < (gram_ * a); });

    RMat inner(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) inner(i, j) = torus_inner(TorusVector(simple[i]), TorusVector(simple[j]));
    std::optional<RootSystem> sys;
    try {
        sys = RootSystem::from_inner_form(inner);
    } catch (const DomainError& e) {
        restricted_error_ = std::string("restricted roots do not form a root system: ") + e.what();
        return;
    }

    RestrictedRoots out{*sys, {}};
    for (const auto& v : simple) out.lifts.emplace_back(v);
    const RMat mi = linalg::inverse(inner);
    for (const auto& v : proj) {
        RVec pairings(k);
        for (std::size_t i = 0; i < k; ++i) pairings[i] = torus_inner(TorusVector(simple[i]), TorusVector(v));
        if (!sys->is_root(RootVector(mi * pairings))) {
            restricted_error_ = "projected roots are not closed under the restricted reflections";
            return;
        }
    }
    if (sys->roots().size() != proj.size()) {
        restricted_error_ = "projected roots do not exhaust the restricted root system";
        return;
    }
    restricted_ = std::move(out);
}

TorusVector SplitDatum::to_relative(const TorusVector& t) const {
    const auto& r = require_restricted();
    RVec y;
    for (const auto& p : r.lifts) y.push_back(torus_inner(p, t));
    return TorusVector(std::move(y));
}

Weight SplitDatum::extend_character(const Weight& relative) const {
    const auto& r = require_restricted();
    if (relative.size() != r.system.rank()) throw PreconditionError("relative weight has wrong length");
    const RVec e = row_times(relative.coords, r.system.fundamental_in_roots());
    TorusVector t = TorusVector::zero(ambient_.rank());
    for (std::size_t k = 0; k < e.size(); ++k) t = t + e[k] * r.lifts[k];
    return ambient_.to_weight(RootVector(gram_ * t.coords));
}

Decomposition decompose(const Subspace& a, const SplitDatum& d) {
    const std::size_t n = d.ambient().rank();
    validate_subspace(a, n);
    Decomposition out;
    out.ani.snapped = out.spl.snapped = a.snapped;
    if (a.trivial()) return out;
    const RMat v = columns_of(a.basis, n);
    const RMat s = columns_of(d.split_basis(), n);
    const RMat gv = d.torus_gram() * v;
    out.ani.basis = combine(v, linalg::nullspace(s.transpose() * gv));
    if (out.ani.trivial()) {
        out.spl.basis = a.basis;
        return out;
    }
    const RMat ani = columns_of(out.ani.basis, n);
    out.spl.basis = combine(v, linalg::nullspace(ani.transpose() * gv));
    return out;
}

Weight q_character_vanishing_on(const Subspace& spl, const SplitDatum& d) {
    const std::size_t n = d.ambient().rank();
    validate_subspace(spl, n);
    if (spl.dim() >= d.rank_q())
        throw PreconditionError("no Q-character is guaranteed: subspace dimension " + std::to_string(spl.dim()) +
                                " is not below the split rank " + std::to_string(d.rank_q()));
    const RMat s = columns_of(d.split_basis(), n);
    RMat m(spl.dim(), d.rank_q());
    if (!spl.trivial()) m = columns_of(spl.basis, n).transpose() * d.torus_gram() * s;
    const auto null = linalg::nullspace(m);
    if (null.empty()) throw InvariantError("character nullspace is empty below the split rank");
    const RVec sv = s * null.front();
    Weight chi = d.ambient().to_weight(RootVector(d.torus_gram() * sv));
    for (std::size_t i = 0; i < chi.size(); ++i)
        if (sgn(chi[i]) != 0) {
            chi = Rational(1 / chi[i]) * chi;
            break;
        }
    return chi;
}

AlmostSplitResult make_almost_split(const Subspace& a, const SplitDatum& d, const WeylGroup& weyl) {
    const auto& sys = d.ambient();
    validate_subspace(a, sys.rank());
    if (!(weyl.system().cartan() == sys.cartan())) throw PreconditionError("Weyl group does not match the ambient system");
    if (a.dim() > d.rank_q())
        throw PreconditionError("subspace dimension " + std::to_string(a.dim()) + " exceeds the split rank " +
                                std::to_string(d.rank_q()));

    AlmostSplitResult res{weyl.identity(), a, {}};
    auto dec = decompose(res.image, d);
    std::size_t steps = 0;
    while (!dec.ani.trivial()) {
        if (++steps > a.dim()) throw InvariantError("almost-split loop exceeded the subspace dimension");
        const std::size_t before = dec.spl.dim();
        const Weight chi = q_character_vanishing_on(dec.spl, d);
        const auto step = weyl.one_step(chi, dec.ani.basis.front());
        if (step.zero) throw InvariantError("Q-character does not vanish on the anisotropic part");
        const WeylElement refl = weyl.from_word(step.reflection_word);
        for (auto& v : res.image.basis) v = weyl.act(refl, v);
        res.w = weyl.compose(refl, res.w);
        dec = decompose(res.image, d);
        if (dec.spl.dim() <= before) throw InvariantError("split dimension did not increase");
        res.trace.push_back({chi, step.beta, dec.spl.dim()});
    }
    return res;
}

AlmostSplitResult make_almost_split(const Subspace& a, const SplitDatum& d) {
    WeylGroup weyl(d.ambient());
    return make_almost_split(a, d, weyl);
}

}  // namespace rootcert
