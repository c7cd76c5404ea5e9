#pragma once

#include <vector>

#include "diophant/intpoly.hpp"

namespace diophant {

// Determinant of a square integer matrix by fraction-free elimination.
inline mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a) {
    const size_t n = a.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a[k][k]) == 0) {
            size_t r = k + 1;
            while (r < n && sgn(a[r][k]) == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

namespace detail {

// Sylvester determinant with formal degrees m = f.size() - 1, n = g.size() - 1.
inline mpz_class sylvester_resultant(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g) {
    const size_t m = f.size() - 1, n = g.size() - 1, s = m + n;
    if (s == 0) return 1;
    std::vector<std::vector<mpz_class>> mat(s, std::vector<mpz_class>(s));
    // rows hold descending coefficients, shifted
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i <= m; ++i) mat[r][r + i] = f[m - i];
    for (size_t r = 0; r < m; ++r)
        for (size_t i = 0; i <= n; ++i) mat[n + r][r + i] = g[n - i];
    return bareiss_determinant(std::move(mat));
}

} // namespace detail

// Univariate resultant res(f, g) of nonzero polynomials.
inline mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero() || g.is_zero()) throw ZeroPolynomial();
    return detail::sylvester_resultant(f.coeffs(), g.coeffs());
}

// Polynomial in x and y stored as coefficients of x^i, each a polynomial in y.
class BivariatePolynomial {
public:
    BivariatePolynomial() = default;
    explicit BivariatePolynomial(std::vector<IntPolynomial> in_x) : c_(std::move(in_x)) { trim_(); }

    // f(x) as a polynomial constant in y.
    static BivariatePolynomial in_x(const IntPolynomial& f) {
        std::vector<IntPolynomial> v;
        for (const auto& c : f.coeffs()) v.push_back(IntPolynomial::constant(c));
        return BivariatePolynomial(std::move(v));
    }

    // f(y) as a polynomial constant in x.
    static BivariatePolynomial in_y(const IntPolynomial& f) { return BivariatePolynomial({f}); }

    bool is_zero() const { return c_.empty(); }
    int degree_x() const { return static_cast<int>(c_.size()) - 1; }

    int degree_y() const {
        int d = -1;
        for (const auto& c : c_) d = std::max(d, c.degree());
        return d;
    }

    const std::vector<IntPolynomial>& coeffs() const { return c_; }

    std::vector<mpz_class> at_y(const mpz_class& y) const {
        std::vector<mpz_class> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(c.eval(y));
        return v;
    }

    BivariatePolynomial swapped() const {
        int dy = degree_y();
        std::vector<std::vector<mpz_class>> t(static_cast<size_t>(dy + 1), std::vector<mpz_class>(c_.size()));
        for (size_t i = 0; i < c_.size(); ++i)
            for (int j = 0; j <= c_[i].degree(); ++j) t[static_cast<size_t>(j)][i] = c_[i].coeff(j);
        std::vector<IntPolynomial> v;
        for (auto& row : t) v.emplace_back(std::move(row));
        return BivariatePolynomial(std::move(v));
    }

    friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) {
        std::vector<IntPolynomial> v(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < v.size(); ++i) {
            if (i < a.c_.size()) v[i] = v[i] + a.c_[i];
            if (i < b.c_.size()) v[i] = v[i] - b.c_[i];
        }
        return BivariatePolynomial(std::move(v));
    }

private:
    void trim_() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<IntPolynomial> c_;
};

enum class Eliminate { x, y };

namespace detail {

// Interpolate integer values at y = 0, 1, ..., D by Newton divided differences.
inline IntPolynomial interpolate_consecutive(const std::vector<mpz_class>& values) {
    const size_t n = values.size();
    std::vector<mpq_class> dd(values.begin(), values.end());
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / mpq_class(static_cast<long>(k));
    // Horner on the Newton basis prod (y - j)
    std::vector<mpq_class> poly{dd[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        std::vector<mpq_class> next(poly.size() + 1);
        for (size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= poly[j] * static_cast<long>(i);
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    std::vector<mpz_class> out;
    for (auto& q : poly) {
        q.canonicalize();
        if (q.get_den() != 1) throw std::logic_error("resultant interpolation produced a non-integer");
        out.push_back(q.get_num());
    }
    return IntPolynomial(std::move(out));
}

} // namespace detail

// Resultant eliminating one variable; the result is a polynomial in the other.
inline IntPolynomial resultant(const BivariatePolynomial& f, const BivariatePolynomial& g, Eliminate var) {
    if (f.is_zero() || g.is_zero()) throw ZeroPolynomial();
    if (var == Eliminate::y) return resultant(f.swapped(), g.swapped(), Eliminate::x);
    const int m = f.degree_x(), n = g.degree_x();
    const int bound = m * std::max(0, g.degree_y()) + n * std::max(0, f.degree_y());
    std::vector<mpz_class> values;
    for (long y = 0; y <= bound; ++y) values.push_back(detail::sylvester_resultant(f.at_y(y), g.at_y(y)));
    return detail::interpolate_consecutive(values);
}

} // namespace diophant
