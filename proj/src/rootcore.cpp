#include "rootcert/rootcore.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "rootcert/errors.hpp"
#include "rootcert/linalg.hpp"

namespace rootcert {

struct RootSystem::Data {
    std::size_t rank = 0;
    std::string label;
    RMat cartan;
    RMat inner;
    RMat cartan_inv;    // fundamental weights in simple-root coordinates
    RMat weight_gram;   // (chi_i, chi_j)
    std::vector<RootVector> positive;
    std::set<RVec> all_roots;
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of;
    std::vector<std::string> component_types;
};

namespace {

struct SeriesSpec {
    char letter;
    std::size_t rank;
};

SeriesSpec parse_series(std::string_view token) {
    if (token.size() < 2 || !std::isalpha(static_cast<unsigned char>(token[0])))
        throw PreconditionError("bad root system kind '" + std::string(token) + "'");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    std::size_t rank = 0;
    for (char c : token.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw PreconditionError("bad root system kind '" + std::string(token) + "'");
        rank = rank * 10 + static_cast<std::size_t>(c - '0');
        if (rank > 64) throw PreconditionError("rank too large in '" + std::string(token) + "'");
    }
    bool ok = false;
    switch (letter) {
        case 'A': ok = rank >= 1; break;
        case 'B':
        case 'C': ok = rank >= 2; break;
        case 'D': ok = rank >= 4; break;
        case 'E': ok = rank >= 6 && rank <= 8; break;
        case 'F': ok = rank == 4; break;
        case 'G': ok = rank == 2; break;
        default: ok = false;
    }
    if (!ok) throw PreconditionError("no root system of type '" + std::string(token) + "'");
    return {letter, rank};
}

// Gram matrix of the Bourbaki simple system, long roots of squared length 2.
RMat series_inner_form(SeriesSpec s) {
    const std::size_t n = s.rank;
    RMat b(n, n);
    auto link = [&](std::size_t i, std::size_t j, const Rational& v) {
        b(i, j) = v;
        b(j, i) = v;
    };
    switch (s.letter) {
        case 'A':
            for (std::size_t i = 0; i < n; ++i) b(i, i) = 2;
            for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
            break;
        case 'B':
            for (std::size_t i = 0; i + 1 < n; ++i) b(i, i) = 2;
            b(n - 1, n - 1) = 1;
            for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
            break;
        case 'C':
            for (std::size_t i = 0; i + 1 < n; ++i) b(i, i) = 1;
            b(n - 1, n - 1) = 2;
            for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, Rational(-1, 2));
            link(n - 2, n - 1, -1);
            break;
        case 'D':
            for (std::size_t i = 0; i < n; ++i) b(i, i) = 2;
            for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
            link(n - 3, n - 1, -1);
            break;
        case 'E':
            for (std::size_t i = 0; i < n; ++i) b(i, i) = 2;
            link(0, 2, -1);
            link(1, 3, -1);
            for (std::size_t i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
            break;
        case 'F':
            b(0, 0) = 2;
            b(1, 1) = 2;
            b(2, 2) = 1;
            b(3, 3) = 1;
            link(0, 1, -1);
            link(1, 2, -1);
            link(2, 3, Rational(-1, 2));
            break;
        case 'G':
            b(0, 0) = Rational(2, 3);
            b(1, 1) = 2;
            link(0, 1, -1);
            break;
        default: throw InvariantError("unknown series");
    }
    return b;
}

RMat block_diagonal(const std::vector<RMat>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    RMat out(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return out;
}

std::vector<std::string> split_kind(std::string_view kind) {
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t i = 0; i < kind.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(kind[i]);
        // '×' is 0xC3 0x97 in UTF-8.
        if (c == 0xC3 && i + 1 < kind.size() && static_cast<unsigned char>(kind[i + 1]) == 0x97) {
            parts.push_back(cur);
            cur.clear();
            ++i;
        } else if (c == 'x' || c == 'X' || c == '+' || c == '*') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(c)) {
            cur.push_back(static_cast<char>(c));
        }
    }
    parts.push_back(cur);
    for (const auto& p : parts)
        if (p.empty()) throw PreconditionError("bad root system kind '" + std::string(kind) + "'");
    return parts;
}

std::string describe_matrix(const RMat& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

void check_positive_definite(const RMat& inner) {
    const auto minors = linalg::leading_minors(inner);
    for (std::size_t k = 0; k < minors.size(); ++k)
        if (sgn(minors[k]) <= 0)
            throw DomainError("not of finite type: leading principal minor of order " + std::to_string(k + 1) +
                              " of the symmetrized Cartan matrix " + describe_matrix(inner) + " is " +
                              to_string(minors[k]) + " (must be > 0)");
}

std::vector<std::vector<std::size_t>> coxeter_components(const RMat& cartan) {
    const std::size_t n = cartan.rows();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> members;
        std::vector<std::size_t> stack{s};
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            members.push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && comp[j] < 0 && sgn(cartan(i, j)) != 0) {
                    comp[j] = static_cast<int>(out.size());
                    stack.push_back(j);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

std::string classify(std::size_t n, std::size_t n_pos, std::size_t n_short_simple, bool simply_laced) {
    auto tag = [](char c, std::size_t r) { return std::string(1, c) + std::to_string(r); };
    if (simply_laced) {
        if (n_pos == n * (n + 1) / 2) return tag('A', n);
        if (n >= 4 && n_pos == n * (n - 1)) return tag('D', n);
        if (n == 6 && n_pos == 36) return "E6";
        if (n == 7 && n_pos == 63) return "E7";
        if (n == 8 && n_pos == 120) return "E8";
    } else {
        if (n == 2 && n_pos == 6) return "G2";
        if (n == 4 && n_pos == 24) return "F4";
        if (n_pos == n * n) return n_short_simple == 1 ? tag('B', n) : tag('C', n);
    }
    throw InvariantError("unrecognized finite root system component");
}

bool lex_greater(const RVec& a, const RVec& b) { return b < a; }

}  // namespace

Integer weyl_order_of_type(const std::string& type) {
    const SeriesSpec s = parse_series(type);
    Integer fact = 1;
    for (std::size_t k = 2; k <= s.rank; ++k) fact *= static_cast<unsigned long>(k);
    switch (s.letter) {
        case 'A': return fact * static_cast<unsigned long>(s.rank + 1);
        case 'B':
        case 'C': {
            Integer p2 = 1;
            p2 <<= static_cast<mp_bitcnt_t>(s.rank);
            return p2 * fact;
        }
        case 'D': {
            Integer p2 = 1;
            p2 <<= static_cast<mp_bitcnt_t>(s.rank - 1);
            return p2 * fact;
        }
        case 'E':
            if (s.rank == 6) return 51840;
            if (s.rank == 7) return 2903040;
            return Integer("696729600");
        case 'F': return 1152;
        case 'G': return 12;
        default: throw InvariantError("unknown series");
    }
}

RootSystem RootSystem::from_kind(std::string_view kind) {
    std::vector<RMat> blocks;
    std::string label;
    for (const auto& part : split_kind(kind)) {
        const SeriesSpec s = parse_series(part);
        blocks.push_back(series_inner_form(s));
        if (!label.empty()) label += "x";
        label += std::string(1, s.letter) + std::to_string(s.rank);
    }
    return from_inner_form(block_diagonal(blocks), label);
}

RootSystem RootSystem::from_inner_form(const RMat& inner, std::string label) {
    const std::size_t n = inner.rows();
    if (n == 0 || inner.cols() != n) throw PreconditionError("inner form must be a non-empty square matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (inner(i, j) != inner(j, i)) throw DomainError("inner form is not symmetric");
    check_positive_definite(inner);
    RMat cartan(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cartan(i, j) = 2 * inner(i, j) / inner(j, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (cartan(i, j).get_den() != 1 || sgn(cartan(i, j)) > 0)
                throw DomainError("inner form does not come from a crystallographic simple system: <alpha_" +
                                  std::to_string(i + 1) + ", alpha_" + std::to_string(j + 1) +
                                  "> = " + to_string(cartan(i, j)));
        }
    // Rescale each component to long-root length 2.
    RMat scaled = inner;
    for (const auto& comp : coxeter_components(cartan)) {
        Rational longest = 0;
        for (auto i : comp) longest = std::max(longest, inner(i, i));
        const Rational f = 2 / longest;
        for (auto i : comp)
            for (auto j : comp) scaled(i, j) = inner(i, j) * f;
    }
    return finalize(std::move(cartan), std::move(scaled), std::move(label));
}

RootSystem RootSystem::from_cartan(const RMat& cartan) {
    const std::size_t n = cartan.rows();
    if (n == 0 || cartan.cols() != n) throw PreconditionError("Cartan matrix must be a non-empty square matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (cartan(i, i) != 2) throw DomainError("Cartan matrix diagonal entries must be 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (cartan(i, j).get_den() != 1 || sgn(cartan(i, j)) > 0)
                throw DomainError("Cartan matrix off-diagonal entries must be non-positive integers");
            if ((sgn(cartan(i, j)) == 0) != (sgn(cartan(j, i)) == 0))
                throw DomainError("Cartan matrix zero pattern is not symmetric");
        }
    }
    // Solve cartan(i,j) * n_j = cartan(j,i) * n_i for the squared lengths n_i.
    std::vector<Rational> norm(n);
    std::vector<bool> seen(n, false);
    for (const auto& comp : coxeter_components(cartan)) {
        norm[comp.front()] = 1;
        seen[comp.front()] = true;
        std::vector<std::size_t> stack{comp.front()};
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || sgn(cartan(i, j)) == 0) continue;
                const Rational nj = cartan(j, i) * norm[i] / cartan(i, j);
                if (!seen[j]) {
                    norm[j] = nj;
                    seen[j] = true;
                    stack.push_back(j);
                } else if (norm[j] != nj) {
                    throw DomainError("Cartan matrix is not symmetrizable");
                }
            }
        }
    }
    RMat inner(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inner(i, j) = cartan(i, j) * norm[j] / 2;
    return from_inner_form(inner, {});
}

RootSystem RootSystem::finalize(RMat cartan, RMat inner, std::string label) {
    auto d = std::make_shared<Data>();
    const std::size_t n = cartan.rows();
    d->rank = n;
    d->cartan = std::move(cartan);
    d->inner = std::move(inner);
    d->cartan_inv = linalg::inverse(d->cartan);
    d->weight_gram = d->cartan_inv * d->inner * d->cartan_inv.transpose();
    d->components = coxeter_components(d->cartan);
    d->component_of.assign(n, 0);
    for (std::size_t c = 0; c < d->components.size(); ++c)
        for (auto i : d->components[c]) d->component_of[i] = c;

    // Positive roots by root strings, one height level at a time.
    std::set<RVec> known;
    std::vector<RVec> level;
    for (std::size_t i = 0; i < n; ++i) {
        RVec e(n);
        e[i] = 1;
        known.insert(e);
        level.push_back(e);
    }
    std::vector<RVec> all = level;
    while (!level.empty()) {
        std::set<RVec> next;
        for (const auto& beta : level) {
            const RVec paired = row_times(beta, d->cartan);  // <beta, alpha_i>
            for (std::size_t i = 0; i < n; ++i) {
                int p = 0;
                RVec down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!known.count(down)) break;
                    ++p;
                }
                const Rational q = Rational(p) - paired[i];
                if (sgn(q) > 0) {
                    RVec up = beta;
                    up[i] += 1;
                    if (!known.count(up)) next.insert(up);
                }
            }
        }
        level.assign(next.begin(), next.end());
        for (const auto& r : level) {
            known.insert(r);
            all.push_back(r);
        }
    }
    std::sort(all.begin(), all.end(), [](const RVec& a, const RVec& b) {
        const Rational ha = height(RootVector(a)), hb = height(RootVector(b));
        if (ha != hb) return ha < hb;
        return lex_greater(a, b);
    });
    for (auto& r : all) {
        d->all_roots.insert(r);
        d->all_roots.insert(rootcert::neg(r));
        d->positive.emplace_back(std::move(r));
    }

    std::string derived_label;
    for (const auto& comp : d->components) {
        std::size_t n_pos = 0;
        for (const auto& beta : d->positive) {
            bool inside = false;
            for (auto i : comp)
                if (sgn(beta[i]) != 0) inside = true;
            if (inside) ++n_pos;
        }
        Rational longest = 0;
        for (auto i : comp) longest = std::max(longest, d->inner(i, i));
        std::size_t n_short = 0;
        for (auto i : comp)
            if (d->inner(i, i) != longest) ++n_short;
        d->component_types.push_back(classify(comp.size(), n_pos, n_short, n_short == 0));
        if (!derived_label.empty()) derived_label += "x";
        derived_label += d->component_types.back();
    }
    d->label = label.empty() ? derived_label : std::move(label);
    return RootSystem(std::move(d));
}

std::size_t RootSystem::rank() const { return d_->rank; }
const std::string& RootSystem::label() const { return d_->label; }
const RMat& RootSystem::cartan() const { return d_->cartan; }
const RMat& RootSystem::inner_form() const { return d_->inner; }
const RMat& RootSystem::fundamental_in_roots() const { return d_->cartan_inv; }
const std::vector<RootVector>& RootSystem::positive_roots() const { return d_->positive; }

std::vector<RootVector> RootSystem::roots() const {
    std::vector<RootVector> out = d_->positive;
    for (const auto& r : d_->positive) out.push_back(-r);
    return out;
}

bool RootSystem::is_root(const RootVector& beta) const { return d_->all_roots.count(beta.coords) > 0; }

bool RootSystem::is_positive(const RootVector& beta) {
    bool any = false;
    for (const auto& c : beta.coords) {
        if (sgn(c) < 0) return false;
        if (sgn(c) > 0) any = true;
    }
    return any;
}

Rational RootSystem::height(const RootVector& beta) {
    Rational h = 0;
    for (const auto& c : beta.coords) h += c;
    return h;
}

bool RootSystem::dominates(const RootVector& beta, const RootVector& gamma) {
    for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i] < gamma[i]) return false;
    return true;
}

const std::vector<std::vector<std::size_t>>& RootSystem::components() const { return d_->components; }
std::size_t RootSystem::component_of(std::size_t i) const { return d_->component_of.at(i); }
const std::string& RootSystem::component_type(std::size_t c) const { return d_->component_types.at(c); }

RootVector RootSystem::simple_root(std::size_t i) const { return RootVector::unit(rank(), i); }
Weight RootSystem::fundamental_weight(std::size_t i) const { return Weight::unit(rank(), i); }

Weight RootSystem::rho() const {
    Weight w = Weight::zero(rank());
    for (std::size_t i = 0; i < rank(); ++i) w[i] = 1;
    return w;
}

Weight RootSystem::to_weight(const RootVector& beta) const {
    if (beta.size() != rank()) throw PreconditionError("root vector has wrong length");
    return Weight(row_times(beta.coords, d_->cartan));
}

RootVector RootSystem::to_roots(const Weight& chi) const {
    if (chi.size() != rank()) throw PreconditionError("weight has wrong length");
    return RootVector(row_times(chi.coords, d_->cartan_inv));
}

Rational RootSystem::inner(const Weight& a, const Weight& b) const {
    if (a.size() != rank() || b.size() != rank()) throw PreconditionError("weight has wrong length");
    return dot(a.coords, d_->weight_gram * b.coords);
}

Rational RootSystem::inner(const RootVector& a, const RootVector& b) const {
    if (a.size() != rank() || b.size() != rank()) throw PreconditionError("root vector has wrong length");
    return dot(a.coords, d_->inner * b.coords);
}

Rational RootSystem::pairing(const Weight& chi1, const Weight& chi2) const {
    const Rational n2 = inner(chi2, chi2);
    if (sgn(n2) == 0) throw DomainError("pairing: second argument is zero");
    return 2 * inner(chi1, chi2) / n2;
}

Rational RootSystem::pairing(const Weight& chi, const RootVector& beta) const {
    return pairing(chi, to_weight(beta));
}

Rational RootSystem::pairing(const RootVector& a, const RootVector& b) const {
    const Rational n2 = inner(b, b);
    if (sgn(n2) == 0) throw DomainError("pairing: second argument is zero");
    return 2 * inner(a, b) / n2;
}

Weight RootSystem::reflect(const Weight& chi, const RootVector& beta) const {
    if (!is_root(beta)) throw DomainError("reflect: not a root of " + label());
    return chi - pairing(chi, beta) * to_weight(beta);
}

RootVector RootSystem::reflect(const RootVector& gamma, const RootVector& beta) const {
    if (!is_root(beta)) throw DomainError("reflect: not a root of " + label());
    return gamma - pairing(gamma, beta) * beta;
}

Weight RootSystem::simple_reflect(const Weight& chi, std::size_t i) const {
    Weight out = chi;
    const Rational c = chi[i];
    if (sgn(c) == 0) return out;
    for (std::size_t k = 0; k < rank(); ++k) out[k] -= c * d_->cartan(i, k);
    return out;
}

RootVector RootSystem::simple_reflect(const RootVector& beta, std::size_t i) const {
    RootVector out = beta;
    Rational paired = 0;
    for (std::size_t k = 0; k < rank(); ++k) paired += beta[k] * d_->cartan(k, i);
    out[i] -= paired;
    return out;
}

TorusVector RootSystem::simple_reflect(const TorusVector& t, std::size_t i) const {
    TorusVector out = t;
    const Rational xi = t[i];
    if (sgn(xi) == 0) return out;
    for (std::size_t j = 0; j < rank(); ++j) out[j] -= d_->cartan(j, i) * xi;
    return out;
}

Rational RootSystem::evaluate(const Weight& chi, const TorusVector& t) const {
    return dot(to_roots(chi).coords, t.coords);
}

Rational RootSystem::evaluate(const RootVector& beta, const TorusVector& t) const {
    return dot(beta.coords, t.coords);
}

RootVector RootSystem::highest_root(std::size_t component) const {
    const auto& comp = components().at(component);
    std::vector<const RootVector*> members;
    for (const auto& beta : d_->positive) {
        std::size_t first = 0;
        while (sgn(beta[first]) == 0) ++first;
        if (component_of(first) == component) members.push_back(&beta);
    }
    for (const auto* cand : members) {
        bool top = true;
        for (const auto* other : members)
            if (!dominates(*cand, *other)) {
                top = false;
                break;
            }
        if (top) return *cand;
    }
    throw InvariantError("component " + std::to_string(component) + " of size " + std::to_string(comp.size()) +
                         " has no highest root");
}

Rational RootSystem::max_simple_root_pairing(const std::vector<std::size_t>& indices) const {
    std::vector<std::size_t> idx = indices;
    if (idx.empty())
        for (std::size_t i = 0; i < rank(); ++i) idx.push_back(i);
    Rational best = 0;
    bool first = true;
    for (auto l : idx)
        for (const auto& beta : roots()) {
            const Rational v = pairing(simple_root(l), beta);
            if (first || v > best) {
                best = v;
                first = false;
            }
        }
    return best;
}

}  // namespace rootcert
