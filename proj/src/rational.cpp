#include "rootcert/rational.hpp"

#include <cctype>
#include <cmath>

#include "rootcert/errors.hpp"

namespace rootcert {

RMat RMat::identity(std::size_t n) {
    RMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMat RMat::from_rows(const std::vector<RVec>& rows) {
    if (rows.empty()) return {};
    RMat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw PreconditionError("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RMat RMat::from_columns(const std::vector<RVec>& cols) {
    if (cols.empty()) return {};
    RMat m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows_) throw PreconditionError("ragged matrix columns");
        for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

RVec RMat::row(std::size_t i) const {
    return RVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RVec RMat::col(std::size_t j) const {
    RVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

RMat RMat::transpose() const {
    RMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RMat RMat::operator*(const RMat& rhs) const {
    if (cols_ != rhs.rows_) throw PreconditionError("matrix shape mismatch");
    RMat out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& aik = (*this)(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

RVec RMat::operator*(const RVec& v) const {
    if (cols_ != v.size()) throw PreconditionError("matrix/vector shape mismatch");
    RVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

RMat& RMat::operator*=(const Rational& s) {
    for (auto& x : a_) x *= s;
    return *this;
}

bool RMat::operator==(const RMat& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

Rational dot(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw PreconditionError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RVec add(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw PreconditionError("add: length mismatch");
    RVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RVec sub(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw PreconditionError("sub: length mismatch");
    RVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RVec scale(const RVec& a, const Rational& s) {
    RVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

RVec neg(const RVec& a) {
    RVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

bool is_zero(const RVec& a) {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

RVec row_times(const RVec& v, const RMat& m) {
    if (v.size() != m.rows()) throw PreconditionError("row_times: shape mismatch");
    RVec out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(v[i]) == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}
std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
    auto bad = [&] { return DomainError("not a rational literal: '" + std::string(original) + "'"); };
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        s = s.substr(0, e);
        bool exp_neg = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_neg = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6) throw bad();
        exponent = std::stol(std::string(exp_part));
        if (exp_neg) exponent = -exponent;
    }
    std::string digits;
    if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot_pos);
        std::string_view fp = s.substr(dot_pos + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
            (!fp.empty() && !all_digits(fp)))
            throw bad();
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw bad();
        digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    Rational value{Integer(digits)};
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0)
        value *= Rational(ten_pow);
    else
        value /= Rational(ten_pow);
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw DomainError("empty rational literal");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = trim(s.substr(0, slash));
        std::string_view den = trim(s.substr(slash + 1));
        std::string_view num_digits = num;
        if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
            num_digits.remove_prefix(1);
        if (!all_digits(num_digits) || !all_digits(den))
            throw DomainError("not a rational literal: '" + std::string(text) + "'");
        Integer d{std::string(den)};
        if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        std::string n(num);
        if (!n.empty() && n.front() == '+') n.erase(0, 1);
        Rational q(Integer(n), d);
        q.canonicalize();
        return q;
    }
    return parse_decimal(s, text);
}

RVec parse_rational_list(std::string_view text) {
    RVec out;
    std::string_view s = trim(text);
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = s.find(',', start);
        out.push_back(parse_rational(s.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                    : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Rational snap(double x, double tol) {
    if (!std::isfinite(x)) throw DomainError("cannot snap a non-finite value");
    const Rational target(x);
    const Rational eps(tol);
    // Convergents h/k of the continued fraction of target.
    Integer h_prev2 = 0, h_prev = 1, k_prev2 = 1, k_prev = 0;
    Rational rest = target;
    for (int iter = 0; iter < 200; ++iter) {
        Integer a = floor_of(rest);
        Integer h = a * h_prev + h_prev2;
        Integer k = a * k_prev + k_prev2;
        Rational conv(h, k);
        conv.canonicalize();
        if (abs_of(conv - target) <= eps) {
            // A semiconvergent may reach the tolerance with a smaller denominator.
            for (Integer j = 1; j < a; ++j) {
                Integer hs = j * h_prev + h_prev2;
                Integer ks = j * k_prev + k_prev2;
                if (ks == 0) continue;
                Rational semi(hs, ks);
                semi.canonicalize();
                if (abs_of(semi - target) <= eps) return semi;
            }
            return conv;
        }
        Rational frac = rest - Rational(a);
        if (sgn(frac) == 0) return conv;
        rest = 1 / frac;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return target;
}

Integer floor_of(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Integer round_of(const Rational& q) { return floor_of(q + Rational(1, 2)); }

Rational abs_of(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

}  // namespace rootcert
