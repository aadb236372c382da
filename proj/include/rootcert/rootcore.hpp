#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rootcert/rational.hpp"

namespace rootcert {

// Coordinate vector tagged with its basis. The three bases never mix
// implicitly; conversions go through RootSystem.
template <class Tag>
struct Coords {
    RVec coords;

    Coords() = default;
    explicit Coords(RVec c) : coords(std::move(c)) {}
    static Coords zero(std::size_t n) { return Coords(RVec(n)); }
    static Coords unit(std::size_t n, std::size_t i) {
        RVec c(n);
        c[i] = 1;
        return Coords(std::move(c));
    }

    std::size_t size() const { return coords.size(); }
    const Rational& operator[](std::size_t i) const { return coords[i]; }
    Rational& operator[](std::size_t i) { return coords[i]; }
    bool is_zero() const { return rootcert::is_zero(coords); }

    friend Coords operator+(const Coords& a, const Coords& b) { return Coords(add(a.coords, b.coords)); }
    friend Coords operator-(const Coords& a, const Coords& b) { return Coords(sub(a.coords, b.coords)); }
    friend Coords operator-(const Coords& a) { return Coords(neg(a.coords)); }
    friend Coords operator*(const Rational& s, const Coords& a) { return Coords(scale(a.coords, s)); }
    friend bool operator==(const Coords& a, const Coords& b) { return a.coords == b.coords; }
    friend bool operator!=(const Coords& a, const Coords& b) { return !(a == b); }
    friend bool operator<(const Coords& a, const Coords& b) { return a.coords < b.coords; }
};

struct WeightTag {};
struct RootTag {};
struct TorusTag {};

// chi = sum c_i chi_i in the fundamental-weight basis.
using Weight = Coords<WeightTag>;
// beta = sum d_i alpha_i in the simple-root basis.
using RootVector = Coords<RootTag>;
// x_i = alpha_i(t).
using TorusVector = Coords<TorusTag>;

// Finite reduced root system with exact Cartan data. Immutable; copies share
// their data.
//
// Conventions: cartan(i, j) = <alpha_i, alpha_j> = 2 (alpha_i, alpha_j) /
// (alpha_j, alpha_j), normalized by the second argument. inner_form is scaled
// so that long roots have squared length 2 in every component.
class RootSystem {
public:
    // "A2", "G2", "A2xA1", "E6". Series ranks: A>=1, B>=2, C>=2, D>=4, E6-8, F4, G2.
    static RootSystem from_kind(std::string_view kind);
    // Rejects matrices that are not finite-type Cartan matrices.
    static RootSystem from_cartan(const RMat& cartan);
    // Symmetric positive-definite Gram matrix of a simple system.
    static RootSystem from_inner_form(const RMat& inner, std::string label = {});

    std::size_t rank() const;
    const std::string& label() const;
    const RMat& cartan() const;
    const RMat& inner_form() const;
    // Row i holds the simple-root coordinates of the fundamental weight chi_i.
    const RMat& fundamental_in_roots() const;

    // Sorted by height, then lexicographically descending.
    const std::vector<RootVector>& positive_roots() const;
    std::vector<RootVector> roots() const;
    bool is_root(const RootVector& beta) const;
    static bool is_positive(const RootVector& beta);
    static Rational height(const RootVector& beta);
    // beta >= gamma: the difference is a non-negative combination of simple roots.
    static bool dominates(const RootVector& beta, const RootVector& gamma);

    const std::vector<std::vector<std::size_t>>& components() const;
    std::size_t component_of(std::size_t simple_index) const;
    // "A2", "B3", "G2", ...
    const std::string& component_type(std::size_t component) const;

    RootVector simple_root(std::size_t i) const;
    Weight fundamental_weight(std::size_t i) const;
    Weight rho() const;

    Weight to_weight(const RootVector& beta) const;
    RootVector to_roots(const Weight& chi) const;

    Rational inner(const Weight& a, const Weight& b) const;
    Rational inner(const RootVector& a, const RootVector& b) const;

    // 2 (chi1, chi2) / (chi2, chi2). Throws DomainError when chi2 == 0.
    Rational pairing(const Weight& chi1, const Weight& chi2) const;
    Rational pairing(const Weight& chi, const RootVector& beta) const;
    Rational pairing(const RootVector& a, const RootVector& b) const;

    // chi - <chi, beta> beta. Throws DomainError when beta is not a root.
    Weight reflect(const Weight& chi, const RootVector& beta) const;
    RootVector reflect(const RootVector& gamma, const RootVector& beta) const;

    Weight simple_reflect(const Weight& chi, std::size_t i) const;
    RootVector simple_reflect(const RootVector& beta, std::size_t i) const;
    // Contragredient action on the torus: alpha_j(s_i t) = (s_i alpha_j)(t).
    TorusVector simple_reflect(const TorusVector& t, std::size_t i) const;

    Rational evaluate(const Weight& chi, const TorusVector& t) const;
    Rational evaluate(const RootVector& beta, const TorusVector& t) const;

    // Unique root of the component that dominates every root of it.
    RootVector highest_root(std::size_t component) const;

    // Largest <alpha_l, beta> over simple alpha_l and roots beta, restricted to
    // the given simple indices (all when empty).
    Rational max_simple_root_pairing(const std::vector<std::size_t>& indices = {}) const;

private:
    struct Data;
    explicit RootSystem(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static RootSystem finalize(RMat cartan, RMat inner, std::string label);

    std::shared_ptr<const Data> d_;
};

// Order of the Weyl group of a component type such as "A3" or "E6".
Integer weyl_order_of_type(const std::string& type);

}  // namespace rootcert
