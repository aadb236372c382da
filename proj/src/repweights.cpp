#include "rootcert/repweights.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "rootcert/errors.hpp"

namespace rootcert {

namespace {

bool is_dominant(const Weight& chi) {
    for (std::size_t i = 0; i < chi.size(); ++i)
        if (sgn(chi[i]) < 0) return false;
    return true;
}

struct SaturationCache {
    std::mutex mu;
    std::map<std::pair<std::vector<Rational>, RVec>, std::shared_ptr<const WeightRepSpec>> entries;
};

SaturationCache& cache() {
    static SaturationCache c;
    return c;
}

}  // namespace

ExpansionConstants fundamental_expansion_constants(const RootSystem& system) {
    const std::size_t r = system.rank();
    ExpansionConstants out;
    for (std::size_t i = 0; i < r; ++i) {
        RootVector gamma = RootVector::zero(r);
        for (const auto& beta : system.positive_roots())
            if (beta[i] >= 1) gamma = gamma + beta;
        const RootVector chi = system.to_roots(system.fundamental_weight(i));
        const Rational d = chi[i] / gamma[i];
        if (sgn(d) <= 0) throw InvariantError("expansion constant d_" + std::to_string(i + 1) + " is not positive");
        if (d * gamma != chi)
            throw InvariantError("fundamental weight chi_" + std::to_string(i + 1) + " is not a multiple of gamma_" +
                                 std::to_string(i + 1));
        for (std::size_t j = 0; j < r; ++j)
            if (j != i && system.component_of(j) == system.component_of(i) &&
                sgn(system.pairing(gamma, system.simple_root(j))) != 0)
                throw InvariantError("gamma_" + std::to_string(i + 1) + " is not orthogonal to alpha_" +
                                     std::to_string(j + 1));
        out.gamma.push_back(std::move(gamma));
        out.d.push_back(d);
    }
    return out;
}

bool WeightRepSpec::contains(const Weight& mu) const { return std::binary_search(weights.begin(), weights.end(), mu); }

std::shared_ptr<const WeightRepSpec> saturate(const WeylGroup& weyl, const Weight& highest) {
    const auto& sys = weyl.system();
    const std::size_t r = sys.rank();
    if (highest.size() != r) throw PreconditionError("highest weight has wrong length");
    for (std::size_t i = 0; i < r; ++i)
        if (sgn(highest[i]) < 0 || highest[i].get_den() != 1)
            throw PreconditionError("highest weight must be dominant and integral");

    auto key = std::make_pair(sys.cartan().data(), highest.coords);
    auto& c = cache();
    {
        std::lock_guard<std::mutex> lock(c.mu);
        if (auto it = c.entries.find(key); it != c.entries.end()) return it->second;
    }

    // mu = highest - n with n >= 0 in root coordinates; dominance of mu forces
    // n_i <= (root coordinate i of highest).
    const RootVector top = sys.to_roots(highest);
    std::vector<Integer> bound(r);
    for (std::size_t i = 0; i < r; ++i) bound[i] = floor_of(top[i]);
    std::set<Weight> weights;
    std::vector<Integer> n(r, 0);
    for (;;) {
        RootVector shift = RootVector::zero(r);
        for (std::size_t i = 0; i < r; ++i) shift[i] = Rational(n[i]);
        const Weight mu = highest - sys.to_weight(shift);
        if (is_dominant(mu)) {
            const auto orb = weyl.orbit(mu);
            weights.insert(orb.begin(), orb.end());
            if (weights.size() > weyl.limits().max_order)
                throw RefusalError("saturation exceeds " + to_string(weyl.limits().max_order) + " weights");
        }
        std::size_t i = 0;
        while (i < r && n[i] == bound[i]) n[i++] = 0;
        if (i == r) break;
        ++n[i];
    }

    auto spec = std::make_shared<WeightRepSpec>();
    spec->extreme = highest;
    spec->weights.assign(weights.begin(), weights.end());
    std::lock_guard<std::mutex> lock(c.mu);
    return c.entries.emplace(std::move(key), std::move(spec)).first->second;
}

WeightRepSpec dual(const WeightRepSpec& spec) {
    WeightRepSpec out;
    out.extreme = -spec.extreme;
    out.lowest = !spec.lowest;
    out.extreme_multiplicity_one = spec.extreme_multiplicity_one;
    for (const auto& w : spec.weights) out.weights.push_back(-w);
    std::sort(out.weights.begin(), out.weights.end());
    return out;
}

const char* to_string(NonWeightVerdict v) {
    return v == NonWeightVerdict::GUARANTEED_NOT_WEIGHT ? "GUARANTEED_NOT_WEIGHT" : "UNKNOWN";
}

NonWeightVerdict nonweight_check(const WeylGroup& weyl, const Weight& chi, const WeylElement& w,
                                 const RootVector& beta) {
    const auto& sys = weyl.system();
    if (!is_dominant(chi)) throw PreconditionError("nonweight_check: chi must be dominant");
    if (!sys.is_root(beta)) throw DomainError("nonweight_check: beta is not a root");
    return sgn(sys.pairing(weyl.apply(w, chi), beta)) >= 0 ? NonWeightVerdict::GUARANTEED_NOT_WEIGHT
                                                            : NonWeightVerdict::UNKNOWN;
}

Weight qweight_action_shift(const RootSystem& system, const RootVector& beta, const Weight& lambda) {
    return lambda + system.to_weight(beta);
}

}  // namespace rootcert
