#pragma once

#include <memory>
#include <vector>

#include "rootcert/rootcore.hpp"
#include "rootcert/weyl.hpp"

namespace rootcert {

struct ExpansionConstants {
    // gamma_i = sum of the positive roots beta >= alpha_i.
    std::vector<RootVector> gamma;
    // chi_i = d_i gamma_i.
    RVec d;
};

ExpansionConstants fundamental_expansion_constants(const RootSystem& system);

// Weight data of an irreducible highest-weight module. The extreme weight is
// the highest one, or the lowest one after dual().
struct WeightRepSpec {
    Weight extreme;
    bool lowest = false;
    // Sorted.
    std::vector<Weight> weights;
    bool extreme_multiplicity_one = true;

    bool contains(const Weight& mu) const;
};

// Union of the orbits of the dominant mu <= highest in the same root-lattice
// class. Results are memoized per (system, highest).
std::shared_ptr<const WeightRepSpec> saturate(const WeylGroup& weyl, const Weight& highest);

// Negates every weight: highest becomes lowest.
WeightRepSpec dual(const WeightRepSpec& spec);

enum class NonWeightVerdict { GUARANTEED_NOT_WEIGHT, UNKNOWN };
const char* to_string(NonWeightVerdict v);

// For chi dominant: w(chi)+beta is not a weight of the module of highest
// weight chi whenever <w(chi), beta> >= 0.
NonWeightVerdict nonweight_check(const WeylGroup& weyl, const Weight& chi, const WeylElement& w,
                                 const RootVector& beta);

// beta + lambda; beta may be 0.
Weight qweight_action_shift(const RootSystem& system, const RootVector& beta, const Weight& lambda);

}  // namespace rootcert
