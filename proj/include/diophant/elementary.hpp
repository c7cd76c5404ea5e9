#pragma once

#include <bit>
#include <cmath>
#include <unordered_map>

#include "diophant/ball.hpp"

namespace diophant {

enum class Elementary { ln, arctan, exp };

namespace detail {

inline long guard_bits(long prec) { return 32 + static_cast<long>(std::bit_width(static_cast<unsigned long>(prec))); }

// Fixed-point sum of k^-(2j+1) / (2j+1) with wp fractional bits, alternating
// in sign when `alternate` is set (arctan(1/k)), otherwise all positive
// (artanh(1/k)). floor(floor(a/b)/c) == floor(a/(bc)) keeps every power
// exact, so each term is off by less than 2 ulp and the tail by less than 2.
inline RealBall inverse_series_fixed(unsigned long k, long wp, bool alternate) {
    mpz_class p;
    mpz_setbit(p.get_mpz_t(), static_cast<mp_bitcnt_t>(wp));
    mpz_fdiv_q_ui(p.get_mpz_t(), p.get_mpz_t(), k);
    mpz_class k2 = mpz_class(k) * k;
    mpz_class sum, term;
    long j = 0;
    while (sgn(p) != 0) {
        mpz_fdiv_q_ui(term.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(2 * j + 1));
        if (alternate && (j & 1))
            sum -= term;
        else
            sum += term;
        mpz_fdiv_q(p.get_mpz_t(), p.get_mpz_t(), k2.get_mpz_t());
        ++j;
    }
    return RealBall(Dyadic(sum, -wp), Dyadic(2 * j + 2, -wp));
}

} // namespace detail

// pi = 16 arctan(1/5) - 4 arctan(1/239)
inline RealBall pi_machin(long prec) {
    long wp = prec + detail::guard_bits(prec);
    RealBall a5 = detail::inverse_series_fixed(5, wp, true);
    RealBall a239 = detail::inverse_series_fixed(239, wp, true);
    return (RealBall(16) * a5 - RealBall(4) * a239).with_precision(prec);
}

// pi = 48 arctan(1/18) + 32 arctan(1/57) - 20 arctan(1/239)
inline RealBall pi_gauss(long prec) {
    long wp = prec + detail::guard_bits(prec);
    RealBall a18 = detail::inverse_series_fixed(18, wp, true);
    RealBall a57 = detail::inverse_series_fixed(57, wp, true);
    RealBall a239 = detail::inverse_series_fixed(239, wp, true);
    return (RealBall(48) * a18 + RealBall(32) * a57 - RealBall(20) * a239).with_precision(prec);
}

inline RealBall const_pi(long prec) {
    thread_local std::unordered_map<long, RealBall> cache;
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
    RealBall v = pi_machin(prec);
    cache.emplace(prec, v);
    return v;
}

// ln 2 = 2 artanh(1/3)
inline RealBall const_ln2(long prec) {
    thread_local std::unordered_map<long, RealBall> cache;
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
    long wp = prec + detail::guard_bits(prec);
    RealBall v = detail::inverse_series_fixed(3, wp, false).mul_2exp(1).with_precision(prec);
    cache.emplace(prec, v);
    return v;
}

namespace detail {

inline RealBall log_point(const Dyadic& x, long prec) {
    if (x.sign() <= 0) throw DomainError("logarithm of a non-positive number");
    long wp = prec + guard_bits(prec);
    int64_t k = x.magnitude();
    Dyadic m = x.mul_2exp(-k);
    if (m * m > Dyadic(2)) {
        m = m.mul_2exp(-1);
        ++k;
    }
    RealBall sum(Dyadic(), Dyadic(), wp);
    if (m != Dyadic(1)) {
        RealBall mb(m, Dyadic(), wp);
        RealBall y = (mb - RealBall(1)) / (mb + RealBall(1));
        RealBall y2 = y * y;
        RealBall term = y;
        for (long j = 0;; ++j) {
            sum += term / RealBall(2 * j + 1);
            term *= y2;
            Dyadic t = abs(term).upper();
            if (t.is_zero() || t.magnitude() < -wp - 2) {
                // remaining tail <= |term| / (1 - y^2) <= 2 |term|
                sum = sum.add_error(t.mul_2exp(1));
                break;
            }
        }
    }
    RealBall out = sum.mul_2exp(1);
    if (k != 0) out += RealBall(k) * const_ln2(wp);
    return out.with_precision(prec);
}

inline RealBall sqrt_point(const Dyadic& x, long prec) {
    if (x.sign() < 0) throw DomainError("square root of a negative number");
    if (x.is_zero()) return RealBall(Dyadic(), Dyadic(), prec);
    int64_t wp = prec + 4;
    int64_t sh = 2 * wp - x.bits();
    if (((x.exponent() - sh) & 1) != 0) ++sh;
    mpz_class m;
    bool exact_shift = true;
    if (sh >= 0) {
        mpz_mul_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(sh));
    } else {
        mpz_class rem;
        mpz_fdiv_r_2exp(rem.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(-sh));
        exact_shift = sgn(rem) == 0;
        mpz_fdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(-sh));
    }
    int64_t half = (x.exponent() - sh) / 2;
    mpz_class q, rem;
    mpz_sqrtrem(q.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
    if (exact_shift && sgn(rem) == 0) return RealBall(Dyadic(q, half), Dyadic(), prec).with_precision(prec);
    // the root lies in [q, q + 1] * 2^half
    mpz_class mid = 2 * q + 1;
    return RealBall(Dyadic(mid, half - 1), Dyadic(mpz_class(1), half - 1), prec).with_precision(prec);
}

inline RealBall atan_point(const Dyadic& x, long prec) {
    if (x.is_zero()) return RealBall(Dyadic(), Dyadic(), prec);
    long target = std::max(4L, static_cast<long>(std::sqrt(static_cast<double>(prec))) / 2);
    long wp = prec + guard_bits(prec) + 2 * target + 8;
    Dyadic a = x.abs();
    bool inverted = a > Dyadic(1);
    RealBall v = inverted ? RealBall(1) / RealBall(a, Dyadic(), wp) : RealBall(a, Dyadic(), wp);
    long halvings = 0;
    Dyadic limit = Dyadic(1).mul_2exp(-target);
    while (v.upper() > limit) {
        // tan(a/2) = tan a / (1 + sqrt(1 + tan^2 a)); sqrt is 1/2-Lipschitz above 1
        RealBall w = RealBall(1) + v * v;
        v = v / (RealBall(1) + sqrt_point(w.mid(), wp).add_error(w.rad()));
        ++halvings;
    }
    RealBall v2 = v * v;
    RealBall term = v;
    RealBall sum(Dyadic(), Dyadic(), wp);
    for (long j = 0;; ++j) {
        RealBall t = term / RealBall(2 * j + 1);
        sum = (j & 1) ? sum - t : sum + t;
        term *= v2;
        Dyadic tu = abs(term).upper();
        if (tu.is_zero() || tu.magnitude() < -wp - 2) {
            sum = sum.add_error(tu);
            break;
        }
    }
    RealBall out = sum.mul_2exp(halvings);
    if (inverted) out = const_pi(wp).mul_2exp(-1) - out;
    if (x.sign() < 0) out = -out;
    return out.with_precision(prec);
}

inline RealBall exp_point(const Dyadic& x, long prec) {
    if (x.is_zero()) return RealBall(Dyadic(1), Dyadic(), prec);
    long target = std::max(4L, static_cast<long>(std::sqrt(static_cast<double>(prec))) / 2);
    int64_t squarings = std::max<int64_t>(0, x.magnitude() + 1 + target);
    long wp = prec + guard_bits(prec) + squarings + std::max<int64_t>(0, x.magnitude());
    RealBall r = RealBall(x, Dyadic(), wp).mul_2exp(-squarings);
    RealBall sum(Dyadic(1), Dyadic(), wp);
    RealBall term(Dyadic(1), Dyadic(), wp);
    for (long j = 1;; ++j) {
        term = term * r / RealBall(j);
        sum += term;
        Dyadic tu = abs(term).upper();
        if (tu.is_zero() || tu.magnitude() < -wp - 2) {
            sum = sum.add_error(tu.mul_2exp(1));
            break;
        }
    }
    for (int64_t i = 0; i < squarings; ++i) sum = sum * sum;
    return sum.with_precision(prec);
}

} // namespace detail

inline RealBall sqrt(const RealBall& x) {
    long prec = x.precision();
    if (x.is_negative()) throw DomainError("square root of a negative ball");
    if (x.lower().sign() <= 0) {
        Dyadic top = detail::sqrt_point(x.upper(), prec).upper();
        return RealBall::from_endpoints(Dyadic(), top, x.raw_precision());
    }
    RealBall s = detail::sqrt_point(x.mid(), prec);
    if (x.is_exact()) return s;
    Dyadic low = detail::sqrt_point(x.lower(), kRadiusBits).lower();
    return s.add_error(detail::div_round(x.rad(), low, kRadiusBits, Round::up));
}

inline RealBall log(const RealBall& x) {
    if (!x.is_positive()) throw DomainError("logarithm of a ball touching (-inf, 0]");
    long prec = x.precision();
    RealBall out = detail::log_point(x.mid(), prec);
    if (x.is_exact()) return out;
    return out.add_error(detail::div_round(x.rad(), x.lower(), kRadiusBits, Round::up));
}

inline RealBall atan(const RealBall& x) {
    long prec = x.precision();
    RealBall out = detail::atan_point(x.mid(), prec);
    if (x.is_exact()) return out;
    // |atan'| = 1 / (1 + x^2) on the ball
    Dyadic nearest = x.contains_zero() ? Dyadic() : std::min(x.lower().abs(), x.upper().abs());
    Dyadic den = detail::mag_down(Dyadic(1) + nearest * nearest);
    return out.add_error(detail::div_round(x.rad(), den, kRadiusBits, Round::up));
}

inline RealBall exp(const RealBall& x) {
    long prec = x.precision();
    RealBall out = detail::exp_point(x.mid(), prec);
    if (x.is_exact()) return out;
    Dyadic top = detail::exp_point(x.upper(), 64).upper();
    return out.add_error(detail::mag_up(top) * x.rad());
}

inline RealBall eval_elementary(Elementary fn, const RealBall& x, long prec) {
    require_precision(prec);
    RealBall in = x.with_precision(std::max(prec, x.raw_precision()));
    RealBall out;
    switch (fn) {
    case Elementary::ln: out = log(in); break;
    case Elementary::arctan: out = atan(in); break;
    case Elementary::exp: out = exp(in); break;
    }
    return out.with_precision(prec);
}

// Principal argument in (-pi, pi].
inline RealBall arg(const ComplexBall& z) {
    long prec = std::max(z.re.precision(), z.im.precision());
    if (z.contains_zero()) throw DomainError("argument of a ball containing zero");
    RealBall pi = const_pi(prec + 16);
    RealBall out;
    if (z.im.is_exact_zero()) {
        out = z.re.is_positive() ? RealBall(Dyadic(), Dyadic(), prec) : pi;
    } else if (z.re.is_positive()) {
        out = atan(z.im.with_precision(prec + 16) / z.re);
    } else if (z.im.is_positive()) {
        out = pi.mul_2exp(-1) - atan(z.re.with_precision(prec + 16) / z.im);
    } else if (z.im.is_negative()) {
        out = -pi.mul_2exp(-1) - atan(z.re.with_precision(prec + 16) / z.im);
    } else {
        throw BranchCutError("ball straddles the negative real axis");
    }
    // clamp to the principal range
    Dyadic hi = std::min(out.upper(), pi.upper());
    Dyadic lo = std::max(out.lower(), -pi.upper());
    if (hi < lo) lo = hi;
    if (hi != out.upper() || lo != out.lower()) out = RealBall::from_endpoints(lo, hi, prec + 16);
    return out.with_precision(prec);
}

// Log z = ln|z| + i Arg(z).
inline ComplexBall complex_log(const ComplexBall& z) {
    long prec = std::max(z.re.precision(), z.im.precision());
    if (z.contains_zero()) throw DomainError("logarithm of a ball containing zero");
    RealBall modulus_log;
    if (z.im.is_exact_zero())
        modulus_log = log(abs(z.re.with_precision(prec)));
    else
        modulus_log = log(z.norm().with_precision(prec + 8)).mul_2exp(-1).with_precision(prec);
    return {modulus_log, arg(z)};
}

} // namespace diophant
