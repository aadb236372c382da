#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootcert/rootcore.hpp"
#include "rootcert/weyl.hpp"

namespace rootcert {

// A linear subspace of the torus, given by a basis in evaluation coordinates.
// An empty basis is the trivial subspace.
struct Subspace {
    std::vector<TorusVector> basis;
    // Set when the input came in as floats and was snapped.
    bool snapped = false;

    std::size_t dim() const { return basis.size(); }
    bool trivial() const { return basis.empty(); }
};

// The relative (Q-)root system obtained by projecting the ambient roots to the
// split part.
struct RestrictedRoots {
    RootSystem system;
    // lifts[k] is the torus vector t_{alpha~_k} in the split part, ambient
    // evaluation coordinates. alpha~_k(t) = G(lifts[k], t).
    std::vector<TorusVector> lifts;
};

// Ambient torus t = t0 (+) s with s the split part. t0 is the orthogonal
// complement of s under the form induced by the ambient inner product.
class SplitDatum {
public:
    // Empty split_basis means s = t (every direction split).
    SplitDatum(RootSystem ambient, std::vector<TorusVector> split_basis = {});

    const RootSystem& ambient() const { return ambient_; }
    const std::vector<TorusVector>& split_basis() const { return split_; }
    const std::vector<TorusVector>& aniso_basis() const { return aniso_; }
    std::size_t rank_q() const { return split_.size(); }

    // Torus inner product in evaluation coordinates (inverse of the inner form).
    const RMat& torus_gram() const { return gram_; }
    Rational torus_inner(const TorusVector& a, const TorusVector& b) const;
    // t_beta in evaluation coordinates.
    TorusVector coroot_vector(const RootVector& beta) const;
    // Orthogonal projection onto s.
    TorusVector project(const TorusVector& t) const;

    // Present when the projected roots form a reduced crystallographic system.
    const std::optional<RestrictedRoots>& restricted() const { return restricted_; }
    const std::string& restricted_error() const { return restricted_error_; }
    // Throws DomainError with restricted_error() when absent.
    const RestrictedRoots& require_restricted() const;

    // y_k = alpha~_k(t), relative evaluation coordinates of the projection of t.
    TorusVector to_relative(const TorusVector& t) const;
    // Ambient weight extending a relative weight, vanishing on t0.
    Weight extend_character(const Weight& relative) const;

private:
    void build_restricted();

    RootSystem ambient_;
    std::vector<TorusVector> split_;
    std::vector<TorusVector> aniso_;
    RMat gram_;
    RMat proj_;
    std::optional<RestrictedRoots> restricted_;
    std::string restricted_error_;
};

struct Decomposition {
    Subspace ani;
    Subspace spl;
};

struct SplitStep {
    Weight chi;
    RootVector beta;
    std::size_t new_split_dim = 0;
};

struct AlmostSplitResult {
    WeylElement w;
    Subspace image;
    std::vector<SplitStep> trace;
};

// Checks independence and length; throws PreconditionError otherwise.
void validate_subspace(const Subspace& a, std::size_t n);

// ani = a n t0; spl = orthogonal complement of ani inside a.
Decomposition decompose(const Subspace& a, const SplitDatum& d);

// Nonzero chi vanishing on t0 and on spl. First nonzero coordinate is 1.
Weight q_character_vanishing_on(const Subspace& spl, const SplitDatum& d);

// Conjugates a by simple Weyl reflections until its anisotropic part is
// trivial. Each step lowers dim(a n t0) by one.
AlmostSplitResult make_almost_split(const Subspace& a, const SplitDatum& d, const WeylGroup& weyl);
AlmostSplitResult make_almost_split(const Subspace& a, const SplitDatum& d);

}  // namespace rootcert
