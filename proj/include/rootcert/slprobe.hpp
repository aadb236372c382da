#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rootcert/certify.hpp"

namespace rootcert::slprobe {

// Dense row-major n x n matrix of doubles.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
    static Matrix identity(std::size_t n);
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Matrix operator*(const Matrix& x, const Matrix& y);
double determinant(const Matrix& m);

struct LatticeState {
    std::size_t n = 0;
    // columns generate the lattice g Z^n
    Matrix basis;
    std::vector<double> ray;
    double time = 0.0;
};

// Diagonal exponents s with sum 0 and s_i - s_{i+1} = time * ray_i.
std::vector<double> torus_exponents(const std::vector<double>& ray, double time, std::size_t n);
Matrix torus_element(const std::vector<double>& ray, double time, std::size_t n);

// a_t x for a unimodular x; checks |det| = 1 within 1e-6.
LatticeState make_state(const Matrix& x, const std::vector<double>& ray, double time);

// k-th exterior power: rows and columns indexed by the sorted k-subsets.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);
Matrix exterior_power(const Matrix& m, std::size_t k);

struct ShortestVector {
    double norm = 0.0;
    // integer coordinates in the exterior basis of the lattice
    std::vector<long long> coords;
    std::uint64_t candidates = 0;
};

inline constexpr std::uint64_t kEnumerationCap = 20'000'000;

// Exact minimum of the Euclidean norm over nonzero vectors of the k-th
// exterior power lattice. The basis is LLL-reduced first to shrink the
// enumeration box; the minimum itself comes from exhaustive enumeration.
ShortestVector shortest_vector(const LatticeState& state, std::size_t k);
// Same, for an arbitrary column basis.
ShortestVector shortest_vector(const Matrix& basis);

struct ProbeRow {
    double t = 0.0;
    // indexed like DecayTable::weights
    std::vector<double> weight_norms;
    // k = 1 .. n-1
    std::vector<double> systoles;
};

struct TrackedWeight {
    std::size_t index = 0;
    bool plus = true;
    Weight weight;
    double exponent = 0.0;
};

struct DecayTable {
    std::size_t n = 0;
    std::vector<double> ray;
    std::vector<TrackedWeight> weights;
    // position in `weights` of chi' - alpha_l for the largest coordinate l
    std::size_t tracked = 0;
    std::vector<ProbeRow> rows;

    bool flat = false;
    double max_exponent_error = 0.0;
    bool exponent_ok = true;
    bool tracked_monotone = true;
    bool final_below_initial = true;
    bool systole_monotone = true;
    std::vector<std::string> notes;

    bool passed() const {
        return flat || (exponent_ok && tracked_monotone && final_below_initial && systole_monotone);
    }
    std::string csv() const;
};

struct ProbeOptions {
    double t_max = 3.0;
    std::size_t steps = 7;
    double burn_in = 1.0;
    // evaluation coordinates; defaults to the certificate's first frame vector
    std::optional<TorusVector> ray;
};

// Certificate must come from A_{n-1}; x must have |det| = 1.
DecayTable probe_divergence(const DivergenceCertificate& cert, const Matrix& x, const ProbeOptions& opt = {});

}  // namespace rootcert::slprobe
