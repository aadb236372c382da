#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rootcert {

using Rational = mpq_class;
using Integer = mpz_class;
using RVec = std::vector<Rational>;

// Dense exact matrix, row-major.
class RMat {
public:
    RMat() = default;
    RMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static RMat identity(std::size_t n);
    static RMat from_rows(const std::vector<RVec>& rows);
    static RMat from_columns(const std::vector<RVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RVec row(std::size_t i) const;
    RVec col(std::size_t j) const;
    RMat transpose() const;

    RMat operator*(const RMat& rhs) const;
    RVec operator*(const RVec& v) const;
    RMat& operator*=(const Rational& s);
    bool operator==(const RMat& rhs) const;

    const std::vector<Rational>& data() const { return a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

Rational dot(const RVec& a, const RVec& b);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
RVec scale(const RVec& a, const Rational& s);
RVec neg(const RVec& a);
bool is_zero(const RVec& a);
// v * M for a row vector v.
RVec row_times(const RVec& v, const RMat& m);

// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p/q", "p", and decimal/scientific literals. Decimal literals are
// converted exactly (e.g. "0.1" -> 1/10).
Rational parse_rational(std::string_view text);

// Comma separated list of rationals, e.g. "1,-1/2,0.25".
RVec parse_rational_list(std::string_view text);

// Smallest-denominator rational within tol of x (continued-fraction convergents
// and semiconvergents).
Rational snap(double x, double tol = 1e-9);

Integer floor_of(const Rational& q);
// Nearest integer, ties toward +infinity.
Integer round_of(const Rational& q);
Rational abs_of(const Rational& q);

}  // namespace rootcert
