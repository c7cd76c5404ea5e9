#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "diophant/errors.hpp"

namespace diophant {

enum class Round { down, up, nearest };

// Exact binary fraction mantissa * 2^exponent.
// Canonical form: the mantissa is odd, or zero with exponent 0.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long v) : man_(v) { normalize(); }
    explicit Dyadic(const mpz_class& man, int64_t exp = 0) : man_(man), exp_(exp) { normalize(); }
    explicit Dyadic(mpz_class&& man, int64_t exp = 0) : man_(std::move(man)), exp_(exp) { normalize(); }

    const mpz_class& mantissa() const { return man_; }
    int64_t exponent() const { return exp_; }
    bool is_zero() const { return sgn(man_) == 0; }
    int sign() const { return sgn(man_); }

    int64_t bits() const {
        return is_zero() ? 0 : static_cast<int64_t>(mpz_sizeinbase(man_.get_mpz_t(), 2));
    }

    // floor(log2 |x|). Meaningless for zero.
    int64_t magnitude() const { return bits() + exp_ - 1; }

    Dyadic operator-() const {
        Dyadic r;
        r.man_ = -man_;
        r.exp_ = exp_;
        return r;
    }

    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    Dyadic mul_2exp(int64_t k) const {
        if (is_zero()) return *this;
        Dyadic r = *this;
        r.exp_ += k;
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        mpz_class m;
        if (a.exp_ >= b.exp_) {
            mpz_mul_2exp(m.get_mpz_t(), a.man_.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exp_ - b.exp_));
            m += b.man_;
            return Dyadic(std::move(m), b.exp_);
        }
        mpz_mul_2exp(m.get_mpz_t(), b.man_.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exp_ - a.exp_));
        m += a.man_;
        return Dyadic(std::move(m), a.exp_);
    }

    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Dyadic r;
        r.man_ = a.man_ * b.man_;
        r.exp_ = a.exp_ + b.exp_;
        return r; // product of odd mantissas stays odd
    }

    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    friend int cmp(const Dyadic& a, const Dyadic& b) {
        int sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        if (sa == 0) return 0;
        int64_t ma = a.magnitude(), mb = b.magnitude();
        if (ma != mb) return ma < mb ? -sa : sa;
        return (a - b).sign();
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.exp_ == b.exp_ && a.man_ == b.man_; }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        int c = cmp(a, b);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    // Round to at most prec significant bits.
    Dyadic rounded(int64_t prec, Round mode) const {
        int64_t excess = bits() - prec;
        if (excess <= 0) return *this;
        mpz_class q;
        auto sh = static_cast<mp_bitcnt_t>(excess);
        switch (mode) {
        case Round::down: mpz_fdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), sh); break;
        case Round::up: mpz_cdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), sh); break;
        case Round::nearest: {
            mpz_class half;
            mpz_setbit(half.get_mpz_t(), sh - 1);
            q = man_ + half;
            mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), sh);
            break;
        }
        }
        return Dyadic(std::move(q), exp_ + excess);
    }

    mpz_class floor() const {
        mpz_class r;
        if (exp_ >= 0)
            mpz_mul_2exp(r.get_mpz_t(), man_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
        else
            mpz_fdiv_q_2exp(r.get_mpz_t(), man_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
        return r;
    }

    mpz_class ceil() const {
        mpz_class r;
        if (exp_ >= 0)
            mpz_mul_2exp(r.get_mpz_t(), man_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
        else
            mpz_cdiv_q_2exp(r.get_mpz_t(), man_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
        return r;
    }

    mpq_class to_mpq() const {
        if (exp_ >= 0) return mpq_class(floor());
        mpz_class den;
        mpz_setbit(den.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
        mpq_class q(man_, den);
        q.canonicalize();
        return q;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        long e = 0;
        double d = mpz_get_d_2exp(&e, man_.get_mpz_t());
        int64_t total = e + exp_;
        if (total > 4000) return d > 0 ? HUGE_VAL : -HUGE_VAL;
        if (total < -4000) return 0.0;
        return std::ldexp(d, static_cast<int>(total));
    }

    // Directed rounding of a rational to prec bits.
    static Dyadic from_mpq(const mpq_class& q, int64_t prec, Round mode) {
        const mpz_class& num = q.get_num();
        const mpz_class& den = q.get_den();
        if (sgn(num) == 0) return {};
        if (mpz_popcount(den.get_mpz_t()) == 1) {
            auto k = static_cast<int64_t>(mpz_scan1(den.get_mpz_t(), 0));
            return Dyadic(num, -k).rounded(prec, mode);
        }
        auto nb = static_cast<int64_t>(mpz_sizeinbase(num.get_mpz_t(), 2));
        auto db = static_cast<int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2));
        int64_t s = std::max<int64_t>(0, prec + db - nb + 2);
        mpz_class scaled;
        mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
        mpz_class quo;
        if (mode == Round::up)
            mpz_cdiv_q(quo.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        else
            mpz_fdiv_q(quo.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        // quo is never exact here (den is not a power of two), so a second
        // directed rounding keeps the direction.
        return Dyadic(std::move(quo), -s).rounded(prec, mode == Round::nearest ? Round::down : mode);
    }

    // Exact decimal expansion; every dyadic has a finite one.
    std::string to_decimal() const {
        if (exp_ >= 0) return floor().get_str();
        auto k = static_cast<unsigned long>(-exp_);
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 5, k);
        mpz_class n = man_;
        bool neg = sgn(n) < 0;
        if (neg) n = -n;
        n *= p;
        std::string digits = n.get_str();
        if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
        digits.insert(digits.size() - k, ".");
        return neg ? "-" + digits : digits;
    }

    // Inverse of to_decimal. Throws ParseError when the value is not dyadic.
    static Dyadic from_decimal(std::string_view text);

    // Approximate rendering with the given number of significant digits.
    std::string to_string(int digits = 17) const;

private:
    void normalize() {
        if (sgn(man_) == 0) {
            exp_ = 0;
            return;
        }
        auto tz = mpz_scan1(man_.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_fdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
            exp_ += static_cast<int64_t>(tz);
        }
    }

    mpz_class man_;
    int64_t exp_ = 0;
};

// Parse a decimal literal like "-12.5e-3" into an exact rational.
inline mpq_class parse_decimal(std::string_view text) {
    auto fail = [&] { throw ParseError("invalid decimal literal '" + std::string(text) + "'"); };
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    std::string digits;
    long frac = 0;
    bool seen_point = false, any = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            any = true;
            if (seen_point) ++frac;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any) fail();
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        if (i == text.size()) fail();
        for (; i < text.size(); ++i)
            if (text[i] < '0' || text[i] > '9') fail();
        exp10 = std::stol(std::string(text.substr(start)));
    }
    if (i != text.size()) fail();
    mpq_class q{mpz_class(digits, 10)};
    long shift = exp10 - frac;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        q *= p;
    else
        q /= p;
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

inline Dyadic Dyadic::from_decimal(std::string_view text) {
    mpq_class q = parse_decimal(text);
    if (mpz_popcount(q.get_den().get_mpz_t()) != 1)
        throw ParseError("decimal literal '" + std::string(text) + "' is not a dyadic rational");
    return from_mpq(q, INT64_MAX, Round::down);
}

inline std::string Dyadic::to_string(int digits) const {
    if (is_zero()) return "0";
    mpf_class f(0, static_cast<mp_bitcnt_t>(bits() + 4 * digits + 64));
    f = mpf_class(man_, static_cast<mp_bitcnt_t>(bits() + 4 * digits + 64));
    if (exp_ >= 0)
        mpf_mul_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(exp_));
    else
        mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(-exp_));
    mp_exp_t e10 = 0;
    std::string s = f.get_str(e10, 10, static_cast<size_t>(digits));
    bool neg = !s.empty() && s[0] == '-';
    if (neg) s.erase(0, 1);
    std::string out;
    if (e10 > 0 && e10 <= 21) {
        if (static_cast<size_t>(e10) >= s.size())
            out = s + std::string(static_cast<size_t>(e10) - s.size(), '0');
        else
            out = s.substr(0, static_cast<size_t>(e10)) + "." + s.substr(static_cast<size_t>(e10));
    } else if (e10 <= 0 && e10 > -6) {
        out = "0." + std::string(static_cast<size_t>(-e10), '0') + s;
    } else {
        out = s.substr(0, 1);
        if (s.size() > 1) out += "." + s.substr(1);
        out += "e" + std::to_string(static_cast<long>(e10) - 1);
    }
    return neg ? "-" + out : out;
}

} // namespace diophant
