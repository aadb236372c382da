#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "rootcert/rootcore.hpp"

namespace rootcert {

// w = s_{word[0]} s_{word[1]} ... s_{word[k-1]}; the last letter acts first.
// matrix is the action on fundamental-weight coordinates (column vectors).
struct WeylElement {
    std::vector<std::size_t> word;
    RMat matrix;

    std::size_t length() const { return word.size(); }
};

struct WeylLimits {
    std::size_t max_rank = 6;
    // Largest group order enumerate() will materialize.
    Integer max_order = 2'000'000;

    // Reads ROOTCERT_MAX_WEYL when set.
    static WeylLimits from_env();
};

struct OneStepResult {
    // chi(t) != 0 already; beta = 0 works.
    bool zero = false;
    RootVector beta;
    // Minimal w with w(chi)(t) != 0.
    std::vector<std::size_t> word;
    // s_beta = s_1 ... s_{k-1} s_k s_{k-1} ... s_1.
    std::vector<std::size_t> reflection_word;
};

class WeylGroup {
public:
    explicit WeylGroup(RootSystem system, WeylLimits limits = WeylLimits::from_env());

    const RootSystem& system() const { return system_; }
    const WeylLimits& limits() const { return limits_; }

    // Product of the component orders.
    Integer order() const;

    // Breadth-first closure over simple reflections, each element with a
    // minimal word. Built once; throws RefusalError past the configured bounds.
    const std::vector<WeylElement>& enumerate() const;

    WeylElement identity() const;
    WeylElement simple(std::size_t i) const;
    WeylElement from_word(std::vector<std::size_t> word) const;
    WeylElement compose(const WeylElement& a, const WeylElement& b) const;
    WeylElement inverse(const WeylElement& w) const;

    Weight apply(const WeylElement& w, const Weight& chi) const;
    RootVector apply(const WeylElement& w, const RootVector& beta) const;
    // Contragredient action: evaluate(w(chi), t) == evaluate(chi, act(w^-1, t)).
    TorusVector act(const WeylElement& w, const TorusVector& t) const;

    // (chi+, w) with chi+ = w(chi) dominant. Reflects at the lowest-index
    // negative coordinate until none is left.
    std::pair<Weight, WeylElement> dominate(const Weight& chi) const;

    OneStepResult one_step(const Weight& chi, const TorusVector& t) const;

    // Full orbit, sorted.
    std::vector<Weight> orbit(const Weight& chi) const;

private:
    void check_bounds() const;

    RootSystem system_;
    WeylLimits limits_;
    mutable std::once_flag once_;
    mutable std::vector<WeylElement> elements_;
};

}  // namespace rootcert
