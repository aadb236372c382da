#include "rootcert/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "rootcert/errors.hpp"
#include "rootcert/linalg.hpp"

namespace rootcert {

WeylLimits WeylLimits::from_env() {
    WeylLimits lim;
    if (const char* v = std::getenv("ROOTCERT_MAX_WEYL"); v != nullptr && *v != '\0') {
        Integer cap;
        if (cap.set_str(v, 10) != 0 || cap <= 0)
            throw PreconditionError(std::string("ROOTCERT_MAX_WEYL must be a positive integer, got '") + v + "'");
        lim.max_order = cap;
    }
    return lim;
}

WeylGroup::WeylGroup(RootSystem system, WeylLimits limits) : system_(std::move(system)), limits_(std::move(limits)) {}

Integer WeylGroup::order() const {
    Integer n = 1;
    for (std::size_t c = 0; c < system_.components().size(); ++c) n *= weyl_order_of_type(system_.component_type(c));
    return n;
}

void WeylGroup::check_bounds() const {
    const Integer n = order();
    if (system_.rank() > limits_.max_rank)
        throw RefusalError("Weyl group of " + system_.label() + " has rank " + std::to_string(system_.rank()) +
                           " above the enumeration bound " + std::to_string(limits_.max_rank) +
                           " (estimated order " + to_string(n) + ")");
    if (n > limits_.max_order)
        throw RefusalError("Weyl group of " + system_.label() + " has estimated order " + to_string(n) +
                           ", above the cap " + to_string(limits_.max_order) + " (ROOTCERT_MAX_WEYL)");
}

WeylElement WeylGroup::identity() const { return {{}, RMat::identity(system_.rank())}; }

WeylElement WeylGroup::simple(std::size_t i) const {
    const std::size_t r = system_.rank();
    if (i >= r) throw PreconditionError("simple reflection index out of range");
    RMat m = RMat::identity(r);
    for (std::size_t k = 0; k < r; ++k) m(k, i) -= system_.cartan()(i, k);
    return {{i}, std::move(m)};
}

WeylElement WeylGroup::from_word(std::vector<std::size_t> word) const {
    RMat m = RMat::identity(system_.rank());
    for (auto i : word) m = m * simple(i).matrix;
    return {std::move(word), std::move(m)};
}

WeylElement WeylGroup::compose(const WeylElement& a, const WeylElement& b) const {
    std::vector<std::size_t> word = a.word;
    word.insert(word.end(), b.word.begin(), b.word.end());
    return {std::move(word), a.matrix * b.matrix};
}

WeylElement WeylGroup::inverse(const WeylElement& w) const {
    std::vector<std::size_t> word(w.word.rbegin(), w.word.rend());
    return {std::move(word), linalg::inverse(w.matrix)};
}

Weight WeylGroup::apply(const WeylElement& w, const Weight& chi) const { return Weight(w.matrix * chi.coords); }

RootVector WeylGroup::apply(const WeylElement& w, const RootVector& beta) const {
    return system_.to_roots(apply(w, system_.to_weight(beta)));
}

TorusVector WeylGroup::act(const WeylElement& w, const TorusVector& t) const {
    TorusVector out = t;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) out = system_.simple_reflect(out, *it);
    return out;
}

const std::vector<WeylElement>& WeylGroup::enumerate() const {
    check_bounds();
    std::call_once(once_, [this] {
        std::vector<WeylElement> found{identity()};
        std::set<std::vector<Rational>> seen{found.front().matrix.data()};
        std::vector<WeylElement> gens;
        for (std::size_t i = 0; i < system_.rank(); ++i) gens.push_back(simple(i));
        for (std::size_t head = 0; head < found.size(); ++head) {
            for (const auto& g : gens) {
                RMat m = found[head].matrix * g.matrix;
                if (!seen.insert(m.data()).second) continue;
                std::vector<std::size_t> word = found[head].word;
                word.push_back(g.word.front());
                found.push_back({std::move(word), std::move(m)});
            }
        }
        elements_ = std::move(found);
    });
    return elements_;
}

std::pair<Weight, WeylElement> WeylGroup::dominate(const Weight& chi) const {
    if (chi.size() != system_.rank()) throw PreconditionError("weight has wrong length");
    Weight cur = chi;
    std::vector<std::size_t> applied;
    for (std::size_t guard = 0;; ++guard) {
        if (guard > 1'000'000) throw InvariantError("dominance loop did not terminate");
        std::size_t i = 0;
        while (i < cur.size() && sgn(cur[i]) >= 0) ++i;
        if (i == cur.size()) break;
        cur = system_.simple_reflect(cur, i);
        applied.push_back(i);
    }
    std::reverse(applied.begin(), applied.end());
    return {cur, from_word(std::move(applied))};
}

OneStepResult WeylGroup::one_step(const Weight& chi, const TorusVector& t) const {
    if (chi.size() != system_.rank() || t.size() != system_.rank())
        throw PreconditionError("one_step: vector length does not match the rank");
    if (chi.is_zero()) throw PreconditionError("one_step: chi must be non-zero");
    if (t.is_zero()) throw PreconditionError("one_step: t must be non-zero");

    OneStepResult res;
    if (sgn(system_.evaluate(chi, t)) != 0) {
        res.zero = true;
        res.beta = RootVector::zero(system_.rank());
        return res;
    }

    // Breadth-first search over the orbit of t; a path i_1..i_k means
    // t_k = s_{i_k} ... s_{i_1} t, i.e. w = s_{i_1} ... s_{i_k} and w(chi)(t) = chi(t_k).
    struct Node {
        TorusVector t;
        std::vector<std::size_t> path;
    };
    std::deque<Node> queue{{t, {}}};
    std::set<RVec> visited{t.coords};
    std::optional<std::vector<std::size_t>> found;
    while (!queue.empty() && !found) {
        Node node = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i < system_.rank() && !found; ++i) {
            TorusVector next = system_.simple_reflect(node.t, i);
            if (!visited.insert(next.coords).second) continue;
            if (visited.size() > limits_.max_order)
                throw RefusalError("one_step: orbit search exceeded " + to_string(limits_.max_order) + " elements");
            std::vector<std::size_t> path = node.path;
            path.push_back(i);
            if (sgn(system_.evaluate(chi, next)) != 0)
                found = std::move(path);
            else
                queue.push_back({std::move(next), std::move(path)});
        }
    }
    if (!found) {
        if (system_.components().size() > 1)
            throw DomainError("one_step: no component of " + system_.label() +
                              " carries both a non-zero projection of chi and of t");
        throw InvariantError("one_step: Weyl orbit of chi does not separate t in irreducible " + system_.label());
    }

    res.word = *found;
    const std::size_t k = res.word.size();
    std::vector<std::size_t> prefix(res.word.begin(), res.word.end() - 1);
    res.beta = apply(from_word(prefix), system_.simple_root(res.word.back()));
    res.reflection_word = prefix;
    res.reflection_word.push_back(res.word.back());
    res.reflection_word.insert(res.reflection_word.end(), prefix.rbegin(), prefix.rend());
    if (sgn(system_.evaluate(system_.reflect(chi, res.beta), t)) == 0)
        throw InvariantError("one_step: extracted reflection (word length " + std::to_string(k) +
                             ") does not separate t");
    return res;
}

std::vector<Weight> WeylGroup::orbit(const Weight& chi) const {
    if (system_.rank() > limits_.max_rank)
        throw RefusalError("orbit: rank " + std::to_string(system_.rank()) + " above the enumeration bound " +
                           std::to_string(limits_.max_rank) + " (estimated Weyl order " + to_string(order()) + ")");
    std::set<Weight> seen{chi};
    std::vector<Weight> frontier{chi};
    while (!frontier.empty()) {
        std::vector<Weight> next;
        for (const auto& w : frontier)
            for (std::size_t i = 0; i < system_.rank(); ++i) {
                Weight r = system_.simple_reflect(w, i);
                if (seen.insert(r).second) next.push_back(std::move(r));
            }
        if (seen.size() > limits_.max_order)
            throw RefusalError("orbit exceeds " + to_string(limits_.max_order) + " weights");
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace rootcert
