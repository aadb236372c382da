#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rootcert/repweights.hpp"
#include "rootcert/rootcore.hpp"
#include "rootcert/torus.hpp"
#include "rootcert/weyl.hpp"

namespace rootcert {

enum class CheckStatus { PASSED, FAILED, DELEGATED };
const char* to_string(CheckStatus s);

struct Witness {
    std::optional<TorusVector> t;
    std::optional<std::size_t> l;
    std::optional<RootVector> beta;
};

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::PASSED;
    std::string detail;
    std::optional<Witness> witness;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    std::size_t failures() const;
    bool passed() const { return failures() == 0; }
    const CheckResult* first_failure() const;
};

// Weight data attached to the simple index i: the highest-weight side
// chi' - alpha_i with its dominant conjugate, and the negated lowest-weight side.
struct IndexWeights {
    std::size_t index = 0;
    Weight plus;
    Weight plus_dominant;
    // plus_dominant = w(plus)
    WeylElement w;
    Weight minus;
    Weight minus_lowest;
    Integer m_plus = 1;
    Integer m_minus = 1;
};

// Everything lives in the relative root system with the whole torus split:
// weights in its fundamental basis, torus vectors in its evaluation
// coordinates.
struct DivergenceCertificate {
    std::string system_label;
    RMat cartan;

    // A and its image under the dominance element.
    std::vector<TorusVector> subspace;
    std::vector<TorusVector> frame_subspace;

    // Character vanishing on A, first nonzero coordinate 1.
    Weight chi_real;
    WeylElement dominance_w;
    // b = dominance_w(chi_real), dominant.
    Weight chi_dominant;

    std::vector<std::size_t> kept_components;
    std::vector<std::size_t> dropped_components;
    std::vector<std::size_t> kept_indices;

    Rational R;
    Rational tolerance;
    std::vector<Integer> p;
    Integer dirichlet_scale;
    Integer Q;
    // sum p_i chi_i and its root coordinates.
    Weight chi_unscaled;
    RootVector d;
    Integer m;
    Weight chi_prime;
    Rational max_pairing;
    std::vector<std::size_t> pivots;
    std::vector<RootVector> psi;
    std::vector<IndexWeights> per_index;

    VerificationReport checks;
};

struct BuildOptions {
    std::size_t trials = 200;
    std::uint64_t seed = 0;
};

// R = max_i sum_j <chi_i, chi_j> over the given indices, with chi_i taken
// from `fundamentals` (defaults to the fundamental weights).
Rational compute_R(const RootSystem& system, const std::vector<std::size_t>& indices,
                   const std::vector<Weight>& fundamentals = {});

// A given in evaluation coordinates of a split system.
DivergenceCertificate build_certificate(const WeylGroup& weyl, const Subspace& a, const BuildOptions& opt = {});

// A inside the ambient torus of a split datum; A must be almost split.
// Works in the restricted system.
DivergenceCertificate build_certificate(const SplitDatum& d, const Subspace& a, const BuildOptions& opt = {});

// Relative coordinates of an almost split A. Throws PreconditionError when
// A has a non-trivial anisotropic part.
Subspace relative_subspace(const SplitDatum& d, const Subspace& a);

VerificationReport verify_hypotheses(const WeylGroup& weyl, const DivergenceCertificate& cert, const Subspace& a,
                                     std::size_t trials, std::uint64_t seed = 0);

// Decay inequalities at one direction t of the dominated frame. t is
// normalized internally; t with no kept coordinate is rejected.
std::optional<CheckResult> check_direction(const RootSystem& system, const DivergenceCertificate& cert,
                                           const TorusVector& t);

enum class FactorVerdict { NON_OBVIOUS_EXISTS, DIVERGENT_EXISTS, INCONCLUSIVE };
const char* to_string(FactorVerdict v);

struct FactorComponent {
    std::size_t index = 0;
    std::string type;
    std::size_t rank = 0;
    std::size_t projection_dim = 0;
};

struct FactorReport {
    std::vector<FactorComponent> components;
    std::size_t dim_a = 0;
    std::size_t rank_q = 0;
    // Hypothesis of the non-obvious criterion under both readings: the
    // projection to each factor has dimension <= its rank, or dim A itself does.
    bool projection_reading = false;
    bool literal_reading = false;
    bool ambiguous = false;
    FactorVerdict verdict = FactorVerdict::INCONCLUSIVE;
    std::vector<std::string> trace;
};

FactorReport factor_decision(const SplitDatum& d, const Subspace& a);

}  // namespace rootcert
