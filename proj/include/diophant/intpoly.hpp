#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diophant/ball.hpp"
#include "diophant/errors.hpp"

namespace diophant {

// Dense polynomial with arbitrary-precision integer coefficients, stored in
// ascending degree order with no trailing zeros (the zero polynomial is empty).
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::initializer_list<long> ascending) {
        for (long c : ascending) c_.emplace_back(c);
        trim_();
    }
    explicit IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { trim_(); }

    static IntPolynomial constant(const mpz_class& c) { return IntPolynomial(std::vector<mpz_class>{c}); }

    static IntPolynomial monomial(const mpz_class& c, int degree) {
        std::vector<mpz_class> v(static_cast<size_t>(degree) + 1);
        v.back() = c;
        return IntPolynomial(std::move(v));
    }

    static IntPolynomial x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    mpz_class coeff(int i) const {
        return (i >= 0 && static_cast<size_t>(i) < c_.size()) ? c_[static_cast<size_t>(i)] : mpz_class(0);
    }

    const mpz_class& leading() const {
        if (c_.empty()) throw ZeroPolynomial();
        return c_.back();
    }

    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& c : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<mpz_class> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return IntPolynomial(std::move(d));
    }

    // x^deg f(1/x)
    IntPolynomial reversed() const { return IntPolynomial(std::vector<mpz_class>(c_.rbegin(), c_.rend())); }

    // f(x^k)
    IntPolynomial inflate(int k) const {
        if (c_.empty()) return {};
        std::vector<mpz_class> v(static_cast<size_t>(degree()) * static_cast<size_t>(k) + 1);
        for (size_t i = 0; i < c_.size(); ++i) v[i * static_cast<size_t>(k)] = c_[i];
        return IntPolynomial(std::move(v));
    }

    // f(-x)
    IntPolynomial negated_variable() const {
        auto v = c_;
        for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
        return IntPolynomial(std::move(v));
    }

    IntPolynomial divexact(const mpz_class& d) const {
        auto v = c_;
        for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        return IntPolynomial(std::move(v));
    }

    mpz_class eval(const mpz_class& x) const {
        mpz_class acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    mpq_class eval(const mpq_class& x) const {
        mpq_class acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
        return acc;
    }

    // Exact sign of f at a dyadic point, via the homogenized value f(x) 2^(k deg).
    int sign_at(const Dyadic& x) const {
        if (c_.empty()) return 0;
        if (x.exponent() >= 0) return sgn(eval(x.floor()));
        auto shift = static_cast<mp_bitcnt_t>(-x.exponent());
        const mpz_class& m = x.mantissa();
        mpz_class acc = c_.back();
        mpz_class dpow = 1;
        for (size_t i = c_.size() - 1; i-- > 0;) {
            mpz_mul_2exp(dpow.get_mpz_t(), dpow.get_mpz_t(), shift);
            acc = acc * m + c_[i] * dpow;
        }
        return sgn(acc);
    }

    RealBall eval(const RealBall& x) const {
        RealBall acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + RealBall::exact(*it);
        return acc;
    }

    ComplexBall eval(const ComplexBall& z) const {
        ComplexBall acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + ComplexBall(RealBall::exact(*it));
        return acc;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return IntPolynomial(std::move(v));
    }

    IntPolynomial operator-() const {
        auto v = c_;
        for (auto& c : v) c = -c;
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator*(const mpz_class& s, const IntPolynomial& a) {
        auto v = a.c_;
        for (auto& c : v) c *= s;
        return IntPolynomial(std::move(v));
    }

    IntPolynomial& operator+=(const IntPolynomial& o) { return *this = *this + o; }
    IntPolynomial& operator-=(const IntPolynomial& o) { return *this = *this - o; }
    IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    IntPolynomial pow(unsigned k) const {
        IntPolynomial r = constant(1), b = *this;
        while (k) {
            if (k & 1) r *= b;
            k >>= 1;
            if (k) b *= b;
        }
        return r;
    }

    // Text format: ascending decimal coefficients separated by single spaces.
    std::string to_text() const {
        if (c_.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ' ';
            out += c_[i].get_str();
        }
        return out;
    }

    static IntPolynomial parse(std::string_view text) {
        std::vector<mpz_class> v;
        size_t i = 0;
        if (text.empty()) throw ParseError("empty polynomial string");
        while (true) {
            size_t j = text.find(' ', i);
            std::string tok(text.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i));
            size_t k = (tok.size() > 1 && tok[0] == '-') ? 1 : 0;
            if (tok.size() == k) throw ParseError("malformed polynomial string '" + std::string(text) + "'");
            for (size_t t = k; t < tok.size(); ++t)
                if (tok[t] < '0' || tok[t] > '9')
                    throw ParseError("malformed coefficient '" + tok + "' in polynomial string");
            v.emplace_back(tok, 10);
            if (j == std::string_view::npos) break;
            i = j + 1;
        }
        return IntPolynomial(std::move(v));
    }

    // Human-readable form, highest degree first: "3x^4 + 4x^2 + 3".
    std::string pretty(char var = 'x') const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const mpz_class& c = c_[static_cast<size_t>(i)];
            if (sgn(c) == 0) continue;
            mpz_class a = abs(c);
            if (first)
                os << (sgn(c) < 0 ? "-" : "");
            else
                os << (sgn(c) < 0 ? " - " : " + ");
            first = false;
            if (a != 1 || i == 0) os << a.get_str();
            if (i >= 1) os << var;
            if (i >= 2) os << '^' << i;
        }
        return os.str();
    }

private:
    void trim_() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

// Primitive representative with positive leading coefficient.
inline IntPolynomial primitive_normalize(const IntPolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    mpz_class c = f.content();
    if (sgn(f.leading()) < 0) c = -c;
    return f.divexact(c);
}

// Pseudo-division: lc(b)^(deg a - deg b + 1) a = q b + r.
inline std::pair<IntPolynomial, IntPolynomial> pseudo_divmod(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw ZeroPolynomial();
    int db = b.degree();
    if (a.degree() < db) return {IntPolynomial(), a};
    std::vector<mpz_class> r = a.coeffs();
    std::vector<mpz_class> q(static_cast<size_t>(a.degree() - db) + 1);
    const mpz_class& lb = b.leading();
    for (int k = a.degree(); k >= db; --k) {
        mpz_class lead = r[static_cast<size_t>(k)];
        for (auto& c : q) c *= lb;
        q[static_cast<size_t>(k - db)] += lead;
        for (auto& c : r) c *= lb;
        for (int i = 0; i <= db; ++i)
            mpz_submul(r[static_cast<size_t>(k - db + i)].get_mpz_t(), lead.get_mpz_t(), b.coeffs()[static_cast<size_t>(i)].get_mpz_t());
    }
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

// Quotient a / b when it exists in Z[x]; nullopt otherwise.
inline std::optional<IntPolynomial> divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw ZeroPolynomial();
    if (a.is_zero()) return IntPolynomial();
    int db = b.degree();
    if (a.degree() < db) return std::nullopt;
    // cheap rejection on the constant terms
    if (sgn(b.coeff(0)) != 0 && !mpz_divisible_p(a.coeff(0).get_mpz_t(), b.coeff(0).get_mpz_t())) return std::nullopt;
    std::vector<mpz_class> r = a.coeffs();
    std::vector<mpz_class> q(static_cast<size_t>(a.degree() - db) + 1);
    const mpz_class& lb = b.leading();
    mpz_class t;
    for (int k = a.degree(); k >= db; --k) {
        mpz_class& lead = r[static_cast<size_t>(k)];
        if (sgn(lead) == 0) continue;
        if (!mpz_divisible_p(lead.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_divexact(t.get_mpz_t(), lead.get_mpz_t(), lb.get_mpz_t());
        q[static_cast<size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i)
            mpz_submul(r[static_cast<size_t>(k - db + i)].get_mpz_t(), t.get_mpz_t(), b.coeffs()[static_cast<size_t>(i)].get_mpz_t());
    }
    for (const auto& c : r)
        if (sgn(c) != 0) return std::nullopt;
    return IntPolynomial(std::move(q));
}

inline IntPolynomial primitive_part(const IntPolynomial& f) {
    if (f.is_zero()) return f;
    return f.divexact(f.content());
}

// Greatest common divisor, primitive with positive leading coefficient
// (times the gcd of the contents). Primitive PRS.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero()) return primitive_normalize(b) * IntPolynomial::constant(b.content());
    if (b.is_zero()) return primitive_normalize(a) * IntPolynomial::constant(a.content());
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    IntPolynomial p = primitive_part(a), q = primitive_part(b);
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
        IntPolynomial r = pseudo_divmod(p, q).second;
        p = std::move(q);
        q = primitive_part(r);
    }
    return cg * primitive_normalize(p);
}

inline IntPolynomial squarefree_part(const IntPolynomial& f) {
    IntPolynomial p = primitive_normalize(f);
    if (p.degree() <= 0) return p;
    IntPolynomial g = gcd(p, p.derivative());
    auto q = divide_exact(p, primitive_normalize(g));
    return primitive_normalize(*q);
}

// Yun's algorithm: f = unit * prod a_i^i with pairwise coprime squarefree a_i.
inline std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& f) {
    IntPolynomial p = primitive_normalize(f);
    std::vector<std::pair<IntPolynomial, int>> out;
    if (p.degree() <= 0) return out;
    IntPolynomial dp = p.derivative();
    IntPolynomial a0 = primitive_normalize(gcd(p, dp));
    IntPolynomial b = *divide_exact(p, a0);
    IntPolynomial c = *divide_exact(dp, a0);
    IntPolynomial d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        IntPolynomial a = d.is_zero() ? primitive_normalize(b) : primitive_normalize(gcd(b, d));
        if (a.degree() > 0) out.emplace_back(a, i);
        IntPolynomial nb = *divide_exact(b, a);
        IntPolynomial nc = *divide_exact(d, a);
        b = std::move(nb);
        d = nc - b.derivative();
    }
    return out;
}

// Canonical ordering: by degree, then lexicographic on ascending coefficients.
inline bool canonical_less(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

} // namespace diophant
