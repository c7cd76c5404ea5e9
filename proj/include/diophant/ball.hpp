#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>

#include "diophant/dyadic.hpp"
#include "diophant/errors.hpp"

namespace diophant {

inline constexpr long kDefaultPrecision = 256;

// Radii carry only this many significant bits, always rounded up.
inline constexpr int64_t kRadiusBits = 30;

// Upper limit on any working precision. Read once from DIOPHANT_MAX_PREC.
inline long max_precision() {
    static const long value = [] {
        if (const char* env = std::getenv("DIOPHANT_MAX_PREC")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v >= 64) return v;
        }
        return 8192L;
    }();
    return value;
}

inline void require_precision(long prec) {
    if (prec > max_precision())
        throw PrecisionExhausted("requested precision " + std::to_string(prec) +
                                 " bits exceeds the configured maximum of " +
                                 std::to_string(max_precision()));
}

namespace detail {

inline Dyadic mag_up(const Dyadic& x) { return x.abs().rounded(kRadiusBits, Round::up); }

inline Dyadic mag_down(const Dyadic& x) { return x.abs().rounded(kRadiusBits, Round::down); }

// Quotient a / b rounded in the given direction to prec bits.
inline Dyadic div_round(const Dyadic& a, const Dyadic& b, int64_t prec, Round mode) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.is_zero()) return {};
    int64_t s = std::max<int64_t>(0, prec + b.bits() - a.bits() + 2);
    mpz_class num;
    mpz_mul_2exp(num.get_mpz_t(), a.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(s));
    mpz_class q, r;
    if (mode == Round::up)
        mpz_cdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
    else
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
    Dyadic out(std::move(q), a.exponent() - s - b.exponent());
    Round second = mode == Round::nearest ? Round::nearest : mode;
    return out.rounded(prec, second);
}

} // namespace detail

// Midpoint-radius enclosure [mid - rad, mid + rad] of a real number.
// Results of arithmetic are rounded to the larger operand precision; a
// precision of 0 marks an exact value that adopts the other operand's.
class RealBall {
public:
    RealBall() = default;
    RealBall(long v) : mid_(v) {}
    explicit RealBall(const Dyadic& mid, const Dyadic& rad = Dyadic(), long prec = 0)
        : mid_(mid), rad_(detail::mag_up(rad)), prec_(prec) {}

    static RealBall exact(const mpz_class& v, long prec = 0) { return RealBall(Dyadic(v), Dyadic(), prec); }

    static RealBall from_mpq(const mpq_class& q, long prec) {
        Dyadic lo = Dyadic::from_mpq(q, prec + 2, Round::down);
        Dyadic hi = Dyadic::from_mpq(q, prec + 2, Round::up);
        return from_endpoints(lo, hi, prec);
    }

    static RealBall from_endpoints(const Dyadic& lo, const Dyadic& hi, long prec = 0) {
        if (hi < lo) throw DomainError("ball endpoints out of order");
        Dyadic mid = (lo + hi).mul_2exp(-1);
        Dyadic rad = (hi - lo).mul_2exp(-1);
        RealBall b(mid, Dyadic(), prec);
        b.round_mid_();
        b.rad_ = detail::mag_up(b.rad_ + rad);
        return b;
    }

    const Dyadic& mid() const { return mid_; }
    const Dyadic& rad() const { return rad_; }
    long precision() const { return prec_ > 0 ? prec_ : kDefaultPrecision; }
    long raw_precision() const { return prec_; }

    Dyadic lower() const { return mid_ - rad_; }
    Dyadic upper() const { return mid_ + rad_; }

    bool is_exact() const { return rad_.is_zero(); }
    bool is_positive() const { return lower().sign() > 0; }
    bool is_negative() const { return upper().sign() < 0; }
    bool contains_zero() const { return !is_positive() && !is_negative(); }
    bool is_exact_zero() const { return mid_.is_zero() && rad_.is_zero(); }

    bool contains(const Dyadic& x) const { return lower() <= x && x <= upper(); }
    bool contains(const mpq_class& x) const { return lower().to_mpq() <= x && x <= upper().to_mpq(); }
    bool contains(const RealBall& o) const { return lower() <= o.lower() && o.upper() <= upper(); }

    friend bool overlaps(const RealBall& a, const RealBall& b) {
        return a.lower() <= b.upper() && b.lower() <= a.upper();
    }

    // Floor of every point in the ball, if it is the same integer.
    std::optional<mpz_class> certain_floor() const {
        mpz_class lo = lower().floor(), hi = upper().floor();
        if (lo != hi) return std::nullopt;
        return lo;
    }

    RealBall with_precision(long prec) const {
        RealBall r = *this;
        r.prec_ = prec;
        r.round_mid_();
        return r;
    }

    RealBall add_error(const Dyadic& err) const {
        RealBall r = *this;
        r.rad_ = detail::mag_up(r.rad_ + err.abs());
        return r;
    }

    RealBall mid_only() const { return RealBall(mid_, Dyadic(), prec_); }

    RealBall mul_2exp(int64_t k) const {
        RealBall r = *this;
        r.mid_ = mid_.mul_2exp(k);
        r.rad_ = rad_.mul_2exp(k);
        return r;
    }

    double to_double() const { return mid_.to_double(); }

    // Radius relative to |mid|, as a double (infinity when mid is zero).
    double relative_width() const {
        if (rad_.is_zero()) return 0.0;
        if (mid_.is_zero()) return HUGE_VAL;
        return rad_.to_double() / mid_.abs().to_double();
    }

    std::string to_string(int digits = 20) const {
        return mid_.to_string(digits) + " +/- " + rad_.to_string(3);
    }

    RealBall operator-() const {
        RealBall r = *this;
        r.mid_ = -mid_;
        return r;
    }

    friend RealBall operator+(const RealBall& a, const RealBall& b) {
        RealBall r(a.mid_ + b.mid_, Dyadic(), combine_(a, b));
        r.round_mid_();
        r.rad_ = detail::mag_up(r.rad_ + a.rad_ + b.rad_);
        return r;
    }

    friend RealBall operator-(const RealBall& a, const RealBall& b) { return a + (-b); }

    friend RealBall operator*(const RealBall& a, const RealBall& b) {
        RealBall r(a.mid_ * b.mid_, Dyadic(), combine_(a, b));
        r.round_mid_();
        Dyadic prop = detail::mag_up(a.mid_) * b.rad_ + detail::mag_up(b.mid_) * a.rad_ + a.rad_ * b.rad_;
        r.rad_ = detail::mag_up(r.rad_ + prop);
        return r;
    }

    friend RealBall operator/(const RealBall& a, const RealBall& b) {
        long prec = combine_(a, b);
        long eff = prec > 0 ? prec : kDefaultPrecision;
        Dyadic denom_low = b.mid_.abs() - b.rad_;
        if (denom_low.sign() <= 0) throw DomainError("division by a ball containing zero");
        // mid: truncated quotient plus one ulp of truncation error
        int64_t wp = eff + 8;
        int64_t s = std::max<int64_t>(0, wp + b.mid_.bits() - a.mid_.bits() + 2);
        RealBall r;
        r.prec_ = prec;
        Dyadic trunc_err;
        if (!a.mid_.is_zero()) {
            mpz_class num;
            mpz_mul_2exp(num.get_mpz_t(), a.mid_.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(s));
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), b.mid_.mantissa().get_mpz_t());
            int64_t e = a.mid_.exponent() - s - b.mid_.exponent();
            r.mid_ = Dyadic(std::move(q), e);
            if (sgn(rem) != 0) trunc_err = Dyadic(mpz_class(1), e);
        }
        r.round_mid_();
        Dyadic err = r.rad_ + trunc_err;
        if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
            // |a/b - am/bm| <= (ra + |am/bm| rb) / (|bm| - rb)
            Dyadic qabs = detail::mag_up(detail::div_round(a.mid_.abs(), b.mid_.abs(), kRadiusBits, Round::up));
            Dyadic num = detail::mag_up(a.rad_ + qabs * b.rad_);
            Dyadic den = detail::mag_down(denom_low);
            err += detail::div_round(num, den, kRadiusBits, Round::up);
        }
        r.rad_ = detail::mag_up(err);
        return r;
    }

    RealBall& operator+=(const RealBall& o) { return *this = *this + o; }
    RealBall& operator-=(const RealBall& o) { return *this = *this - o; }
    RealBall& operator*=(const RealBall& o) { return *this = *this * o; }
    RealBall& operator/=(const RealBall& o) { return *this = *this / o; }

private:
    static long combine_(const RealBall& a, const RealBall& b) { return std::max(a.prec_, b.prec_); }

    void round_mid_() {
        if (prec_ <= 0) return;
        Dyadic r = mid_.rounded(prec_, Round::nearest);
        if (r != mid_) {
            rad_ = detail::mag_up(rad_ + (r - mid_).abs());
            mid_ = std::move(r);
        }
    }

    Dyadic mid_;
    Dyadic rad_;
    long prec_ = 0;
};

inline RealBall sqr(const RealBall& x) {
    if (!x.contains_zero()) return x * x;
    Dyadic m = std::max(x.lower().abs(), x.upper().abs());
    Dyadic top = detail::mag_up(m * m);
    return RealBall::from_endpoints(Dyadic(), top, x.raw_precision());
}

inline RealBall abs(const RealBall& x) {
    if (x.is_positive()) return x;
    if (x.is_negative()) return -x;
    Dyadic m = std::max(x.lower().abs(), x.upper().abs());
    return RealBall::from_endpoints(Dyadic(), m, x.raw_precision());
}

inline RealBall max(const RealBall& a, const RealBall& b) {
    long p = std::max(a.raw_precision(), b.raw_precision());
    if (a.lower() >= b.upper()) return a;
    if (b.lower() >= a.upper()) return b;
    return RealBall::from_endpoints(std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()), p);
}

inline RealBall min(const RealBall& a, const RealBall& b) { return -max(-a, -b); }

// Rectangle re x im in the complex plane.
struct ComplexBall {
    RealBall re;
    RealBall im;

    ComplexBall() = default;
    ComplexBall(RealBall r, RealBall i = RealBall()) : re(std::move(r)), im(std::move(i)) {}

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool is_real() const { return im.is_exact_zero(); }
    bool contains(const ComplexBall& o) const { return re.contains(o.re) && im.contains(o.im); }

    friend bool overlaps(const ComplexBall& a, const ComplexBall& b) {
        return overlaps(a.re, b.re) && overlaps(a.im, b.im);
    }

    ComplexBall conj() const { return {re, -im}; }
    ComplexBall mid_only() const { return {re.mid_only(), im.mid_only()}; }
    ComplexBall with_precision(long p) const { return {re.with_precision(p), im.with_precision(p)}; }

    // Largest radius of the two components.
    Dyadic radius() const { return std::max(re.rad(), im.rad()); }

    RealBall norm() const { return sqr(re) + sqr(im); }

    std::string to_string(int digits = 20) const {
        return "(" + re.to_string(digits) + ") + i(" + im.to_string(digits) + ")";
    }

    ComplexBall operator-() const { return {-re, -im}; }

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) { return {a.re + b.re, a.im + b.im}; }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return {a.re - b.re, a.im - b.im}; }
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        if (a.im.is_exact_zero() && b.im.is_exact_zero()) return {a.re * b.re, RealBall()};
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexBall operator*(const ComplexBall& a, const RealBall& s) { return {a.re * s, a.im * s}; }
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
        if (b.im.is_exact_zero()) return {a.re / b.re, a.im.is_exact_zero() ? RealBall() : a.im / b.re};
        RealBall n = b.norm();
        ComplexBall t = a * b.conj();
        return {t.re / n, t.im / n};
    }

    ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }
    ComplexBall& operator-=(const ComplexBall& o) { return *this = *this - o; }
    ComplexBall& operator*=(const ComplexBall& o) { return *this = *this * o; }
};

} // namespace diophant
