#include "rootcert/slprobe.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "rootcert/errors.hpp"
#include "rootcert/simd_norms.hpp"

namespace rootcert::slprobe {

namespace {

constexpr std::size_t kBatch = 256;

double dot_col(const std::vector<double>& b, std::size_t N, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r) s += b[r + i * N] * b[r + j * N];
    return s;
}

// Column-major LLL with delta = 0.99; u tracks the unimodular change.
void lll(std::vector<double>& b, std::vector<long long>& u, std::size_t N) {
    auto gram_schmidt = [&](std::vector<double>& mu, std::vector<double>& bstar_sq) {
        std::vector<double> bstar = b;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                double num = 0.0;
                for (std::size_t r = 0; r < N; ++r) num += b[r + i * N] * bstar[r + j * N];
                mu[i * N + j] = bstar_sq[j] > 0 ? num / bstar_sq[j] : 0.0;
                for (std::size_t r = 0; r < N; ++r) bstar[r + i * N] -= mu[i * N + j] * bstar[r + j * N];
            }
            bstar_sq[i] = dot_col(bstar, N, i, i);
        }
    };
    std::vector<double> mu(N * N, 0.0), bs(N, 0.0);
    gram_schmidt(mu, bs);
    std::size_t k = 1, guard = 0;
    while (k < N) {
        if (++guard > 100000) break;  // reduction is only a preconditioner
        for (std::size_t jj = k; jj-- > 0;) {
            const double q = std::round(mu[k * N + jj]);
            if (q != 0.0) {
                const long long qi = static_cast<long long>(q);
                for (std::size_t r = 0; r < N; ++r) b[r + k * N] -= q * b[r + jj * N];
                for (std::size_t r = 0; r < N; ++r) u[r + k * N] -= qi * u[r + jj * N];
                gram_schmidt(mu, bs);
            }
        }
        if (bs[k] >= (0.99 - mu[k * N + k - 1] * mu[k * N + k - 1]) * bs[k - 1]) {
            ++k;
        } else {
            for (std::size_t r = 0; r < N; ++r) {
                std::swap(b[r + k * N], b[r + (k - 1) * N]);
                std::swap(u[r + k * N], u[r + (k - 1) * N]);
            }
            gram_schmidt(mu, bs);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

// Row norms of the inverse of a column basis.
std::vector<double> dual_row_norms(const std::vector<double>& b, std::size_t N) {
    Matrix m(N);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) m(r, c) = b[r + c * N];
    // Gauss-Jordan
    Matrix inv = Matrix::identity(N);
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < N; ++r)
            if (std::fabs(m(r, c)) > std::fabs(m(piv, c))) piv = r;
        if (m(piv, c) == 0.0) throw DomainError("lattice basis is singular");
        for (std::size_t j = 0; j < N; ++j) {
            std::swap(m(c, j), m(piv, j));
            std::swap(inv(c, j), inv(piv, j));
        }
        const double d = m(c, c);
        for (std::size_t j = 0; j < N; ++j) {
            m(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == c) continue;
            const double f = m(r, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < N; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < N; ++j) s += inv(i, j) * inv(i, j);
        out[i] = std::sqrt(s);
    }
    return out;
}

Matrix solve(Matrix m, Matrix rhs) {
    const std::size_t n = m.n;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m(r, c)) > std::fabs(m(piv, c))) piv = r;
        if (m(piv, c) == 0.0) throw PreconditionError("matrix is singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(c, j), m(piv, j));
            std::swap(rhs(c, j), rhs(piv, j));
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = m(r, c) / m(c, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                rhs(r, j) -= f * rhs(c, j);
            }
        }
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) rhs(r, j) /= m(r, r);
    return rhs;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix z(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k)
            for (std::size_t j = 0; j < x.n; ++j) z(i, j) += x(i, k) * y(k, j);
    return z;
}

double determinant(const Matrix& m0) {
    Matrix m = m0;
    const std::size_t n = m.n;
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m(r, c)) > std::fabs(m(piv, c))) piv = r;
        if (m(piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

std::vector<double> torus_exponents(const std::vector<double>& ray, double time, std::size_t n) {
    if (n < 2) throw PreconditionError("n must be at least 2");
    if (ray.size() != n - 1)
        throw PreconditionError("ray has " + std::to_string(ray.size()) + " coordinates, expected " +
                                std::to_string(n - 1));
    // s_1 = (1/n) sum_i (n - i) x_i, then s_{i+1} = s_i - x_i
    double s1 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) s1 += static_cast<double>(n - 1 - i) * time * ray[i];
    s1 /= static_cast<double>(n);
    std::vector<double> s(n);
    s[0] = s1;
    for (std::size_t i = 0; i + 1 < n; ++i) s[i + 1] = s[i] - time * ray[i];
    return s;
}

Matrix torus_element(const std::vector<double>& ray, double time, std::size_t n) {
    const auto s = torus_exponents(ray, time, n);
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = std::exp(s[i]);
    return m;
}

LatticeState make_state(const Matrix& x, const std::vector<double>& ray, double time) {
    if (x.n < 2 || x.n > 5) throw PreconditionError("n must be between 2 and 5");
    if (std::fabs(std::fabs(determinant(x)) - 1.0) > 1e-6)
        throw PreconditionError("x is not unimodular: det = " + std::to_string(determinant(x)));
    LatticeState st;
    st.n = x.n;
    st.ray = ray;
    st.time = time;
    st.basis = torus_element(ray, time, x.n) * x;
    return st;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Matrix exterior_power(const Matrix& m, std::size_t k) {
    const auto sets = subsets(m.n, k);
    Matrix out(sets.size());
    for (std::size_t r = 0; r < sets.size(); ++r)
        for (std::size_t c = 0; c < sets.size(); ++c) {
            Matrix minor(k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) minor(a, b) = m(sets[r][a], sets[c][b]);
            out(r, c) = determinant(minor);
        }
    return out;
}

ShortestVector shortest_vector(const Matrix& basis_rm) {
    const std::size_t N = basis_rm.n;
    for (double v : basis_rm.a)
        if (!std::isfinite(v) || std::fabs(v) > 1e150)
            throw RefusalError("lattice entries overflow double precision; try a smaller time");
    std::vector<double> b(N * N);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) b[r + c * N] = basis_rm(r, c);
    std::vector<long long> u(N * N, 0);
    for (std::size_t i = 0; i < N; ++i) u[i + i * N] = 1;
    lll(b, u, N);

    double radius_sq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < N; ++i) radius_sq = std::min(radius_sq, dot_col(b, N, i, i));
    const double radius = std::sqrt(radius_sq) * (1.0 + 1e-9);
    const auto dual = dual_row_norms(b, N);
    std::vector<std::int32_t> bound(N);
    double box = 1.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double bi = std::floor(radius * dual[i]);
        if (bi > 1e6) throw RefusalError("enumeration radius overflow; try a smaller time");
        bound[i] = static_cast<std::int32_t>(bi);
        box *= 2.0 * bi + 1.0;
    }
    if (box > static_cast<double>(kEnumerationCap))
        throw RefusalError("enumeration box has " + std::to_string(static_cast<long long>(box)) +
                           " candidates (cap " + std::to_string(kEnumerationCap) + "); try a smaller time");

    // Odometer over the half box whose last nonzero coordinate is positive.
    ShortestVector best;
    best.norm = std::numeric_limits<double>::infinity();
    std::vector<std::int32_t> cur(N), batch(N * kBatch);
    for (std::size_t i = 0; i < N; ++i) cur[i] = -bound[i];
    std::vector<double> out(kBatch);
    std::vector<std::int32_t> best_c;

    auto flush = [&](std::size_t count) {
        simd::batch_sqnorms(b.data(), N, batch.data(), kBatch, out.data());
        for (std::size_t j = 0; j < count; ++j)
            if (out[j] < best.norm) {
                best.norm = out[j];
                best_c.assign(N, 0);
                for (std::size_t i = 0; i < N; ++i) best_c[i] = batch[i * kBatch + j];
            }
    };

    std::size_t fill = 0;
    bool done = false;
    while (!done) {
        // keep vectors whose last nonzero coordinate is positive
        std::size_t last = N;
        for (std::size_t i = N; i-- > 0;)
            if (cur[i] != 0) {
                last = i;
                break;
            }
        if (last < N && cur[last] > 0) {
            for (std::size_t i = 0; i < N; ++i) batch[i * kBatch + fill] = cur[i];
            ++best.candidates;
            if (++fill == kBatch) {
                flush(fill);
                fill = 0;
            }
        }
        std::size_t i = 0;
        while (i < N) {
            if (cur[i] < bound[i]) {
                ++cur[i];
                break;
            }
            cur[i] = -bound[i];
            ++i;
        }
        done = i == N;
    }
    if (fill > 0) {
        for (std::size_t j = fill; j < kBatch; ++j)
            for (std::size_t i = 0; i < N; ++i) batch[i * kBatch + j] = 0;
        flush(fill);
    }
    if (best_c.empty()) throw InvariantError("enumeration found no lattice vector");
    best.norm = std::sqrt(best.norm);
    best.coords.assign(N, 0);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t i = 0; i < N; ++i) best.coords[r] += u[r + i * N] * best_c[i];
    return best;
}

ShortestVector shortest_vector(const LatticeState& state, std::size_t k) {
    if (k < 1 || k >= state.n) throw PreconditionError("exterior power k must be in 1..n-1");
    return shortest_vector(k == 1 ? state.basis : exterior_power(state.basis, k));
}

std::string DecayTable::csv() const {
    std::ostringstream os;
    os << "# model: exterior-power realization of SL_" << n << '\n';
    os << 't';
    for (const auto& w : weights) os << ",w" << (w.plus ? "plus" : "minus") << '_' << (w.index + 1);
    for (std::size_t k = 1; k < n; ++k) os << ",systole_" << k;
    os << '\n';
    os << std::setprecision(12);
    for (const auto& r : rows) {
        os << r.t;
        for (double v : r.weight_norms) os << ',' << v;
        for (double v : r.systoles) os << ',' << v;
        os << '\n';
    }
    return os.str();
}

DecayTable probe_divergence(const DivergenceCertificate& cert, const Matrix& x, const ProbeOptions& opt) {
    const std::size_t n = x.n;
    if (n < 2 || n > 5) throw PreconditionError("n must be between 2 and 5");
    if (cert.cartan.rows() != n - 1 || !(cert.cartan == RootSystem::from_kind("A" + std::to_string(n - 1)).cartan()))
        throw PreconditionError("certificate was not built for A" + std::to_string(n - 1));
    if (std::fabs(std::fabs(determinant(x)) - 1.0) > 1e-9)
        throw PreconditionError("x is not unimodular: det = " + std::to_string(determinant(x)));
    if (opt.steps == 0 || !(opt.t_max > 0)) throw PreconditionError("need t_max > 0 and steps > 0");
    const RootSystem sys = RootSystem::from_kind("A" + std::to_string(n - 1));

    DecayTable tab;
    tab.n = n;
    TorusVector ray_q = opt.ray ? *opt.ray : cert.frame_subspace.at(0);
    if (ray_q.size() != n - 1) throw PreconditionError("ray has the wrong length");
    tab.flat = ray_q.is_zero();
    if (!tab.flat) {
        Rational mx = 0;
        for (auto i : cert.kept_indices) mx = std::max(mx, ray_q[i]);
        if (sgn(mx) <= 0) throw PreconditionError("ray has no positive kept coordinate");
        ray_q = Rational(1 / mx) * ray_q;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) tab.ray.push_back(to_double(ray_q[i]));

    std::size_t ell = cert.kept_indices.front();
    for (auto i : cert.kept_indices)
        if (ray_q[i] > ray_q[ell]) ell = i;
    for (const auto& iw : cert.per_index) {
        for (bool plus : {true, false}) {
            TrackedWeight tw;
            tw.index = iw.index;
            tw.plus = plus;
            tw.weight = plus ? iw.plus : iw.minus;
            tw.exponent = to_double(sys.evaluate(tw.weight, ray_q));
            if (plus && iw.index == ell) tab.tracked = tab.weights.size();
            tab.weights.push_back(std::move(tw));
        }
    }

    // Pure tensor of highest vectors: c_i >= 0 copies of e_1..e_i, c_i < 0
    // copies of e_{i+1}..e_n, transported back through x so that the
    // flowed vector is a_t applied to the standard one.
    std::vector<Matrix> ext_x(n);
    for (std::size_t k = 1; k < n; ++k) ext_x[k] = exterior_power(x, k);
    auto factor_index = [&](std::size_t k, bool head) {
        const auto sets = subsets(n, k);
        std::vector<std::size_t> want(k);
        for (std::size_t a = 0; a < k; ++a) want[a] = head ? a : n - k + a;
        return static_cast<std::size_t>(std::find(sets.begin(), sets.end(), want) - sets.begin());
    };
    std::vector<Matrix> transported(n);
    for (std::size_t k = 1; k < n; ++k) transported[k] = solve(ext_x[k], Matrix::identity(ext_x[k].n));

    auto log_norm = [&](const Weight& w, const Matrix& ag) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Rational c = w[i];
            if (sgn(c) == 0) continue;
            // factor lives in the exterior power of degree i+1 (head) or n-i-1 (tail)
            const bool head = sgn(c) > 0;
            const std::size_t k = head ? i + 1 : n - i - 1;
            const std::size_t col = factor_index(k, head);
            const Matrix ek = exterior_power(ag, k);
            const Matrix& inv = transported[k];
            double sq = 0.0;
            for (std::size_t r = 0; r < ek.n; ++r) {
                double v = 0.0;
                for (std::size_t m = 0; m < ek.n; ++m) v += ek(r, m) * inv(m, col);
                sq += v * v;
            }
            total += std::fabs(to_double(c)) * 0.5 * std::log(sq);
        }
        return total;
    };

    std::vector<double> base(tab.weights.size());
    for (std::size_t s = 0; s <= opt.steps; ++s) {
        const double t = opt.t_max * static_cast<double>(s) / static_cast<double>(opt.steps);
        const LatticeState st = make_state(x, tab.ray, t);
        ProbeRow row;
        row.t = t;
        for (std::size_t w = 0; w < tab.weights.size(); ++w) {
            const double ln = log_norm(tab.weights[w].weight, st.basis);
            if (s == 0) base[w] = ln;
            row.weight_norms.push_back(std::exp(ln));
            if (s > 0 && w == tab.tracked && !tab.flat) {
                const double measured = (ln - base[w]) / t;
                const double expected = tab.weights[w].exponent;
                const double err = std::fabs(measured - expected) / std::max(1.0, std::fabs(expected));
                tab.max_exponent_error = std::max(tab.max_exponent_error, err);
            }
        }
        const double det = determinant(st.basis);
        if (std::fabs(std::fabs(det) - 1.0) > 1e-6)
            throw InvariantError("determinant drifted to " + std::to_string(det) + " at t = " + std::to_string(t));
        for (std::size_t k = 1; k < n; ++k) row.systoles.push_back(shortest_vector(st, k).norm);
        tab.rows.push_back(std::move(row));
    }

    if (tab.flat) {
        tab.notes.push_back("zero ray: the flow is trivial and the table is flat");
        return tab;
    }
    tab.exponent_ok = tab.max_exponent_error <= 1e-6;
    const auto& first = tab.rows.front();
    const auto& last = tab.rows.back();
    tab.final_below_initial = last.weight_norms[tab.tracked] < first.weight_norms[tab.tracked];
    for (std::size_t s = 1; s < tab.rows.size(); ++s) {
        const auto& prev = tab.rows[s - 1];
        const auto& cur = tab.rows[s];
        if (cur.t < opt.burn_in || prev.t < opt.burn_in) continue;
        if (!(cur.weight_norms[tab.tracked] <= prev.weight_norms[tab.tracked] * (1 + 1e-12)))
            tab.tracked_monotone = false;
        const double a = *std::min_element(prev.systoles.begin(), prev.systoles.end());
        const double b = *std::min_element(cur.systoles.begin(), cur.systoles.end());
        if (!(b <= a * (1 + 1e-12))) tab.systole_monotone = false;
    }
    if (!tab.exponent_ok) tab.notes.push_back("numeric exponent differs from the certificate exponent");
    if (!tab.tracked_monotone) tab.notes.push_back("tracked norm is not monotone after the burn-in");
    if (!tab.final_below_initial) tab.notes.push_back("tracked norm did not decrease overall");
    if (!tab.systole_monotone) tab.notes.push_back("minimal systole is not monotone after the burn-in");
    return tab;
}

}  // namespace rootcert::slprobe
