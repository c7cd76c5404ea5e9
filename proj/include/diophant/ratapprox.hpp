#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diophant/linforms.hpp"

namespace diophant {

// Enclosure of a real number at a requested working precision.
using ThetaProvider = std::function<RealBall(long prec)>;

struct Convergent {
    mpz_class p;
    mpz_class q;
};

struct ContinuedFractionExpansion {
    std::vector<mpz_class> quotients;
    std::vector<Convergent> convergents;
    size_t certified_terms = 0;
    bool complete = false; // the expansion of an exact rational ended
    long precision = 0;    // working precision of the enclosure used
    RealBall theta;        // that enclosure
};

namespace detail {

inline std::vector<Convergent> convergents_of(const std::vector<mpz_class>& a) {
    std::vector<Convergent> out;
    mpz_class p2 = 0, q2 = 1, p1 = 1, q1 = 0;
    for (const auto& ak : a) {
        mpz_class p = ak * p1 + p2, q = ak * q1 + q2;
        out.push_back({p, q});
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
    }
    return out;
}

// Common prefix of the expansions of every number in [lo, hi].
inline std::vector<mpz_class> cf_common_prefix(mpq_class lo, mpq_class hi, size_t max_terms, bool& complete) {
    std::vector<mpz_class> out;
    complete = false;
    const bool exact = lo == hi;
    while (out.size() < max_terms) {
        mpz_class fl, fh;
        mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(fh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        if (fl != fh) break;
        mpq_class rl = lo - fl, rh = hi - fh;
        if (exact) {
            out.push_back(fl);
            if (rl == 0) {
                complete = true;
                break;
            }
        } else {
            // a fractional part that can vanish leaves the next quotient open
            if (rl == 0 || rh == 0) break;
            out.push_back(fl);
        }
        mpq_class nl = 1 / rh, nh = 1 / rl;
        lo = nl;
        hi = nh;
    }
    return out;
}

} // namespace detail

// Certified continued fraction: doubles the precision of theta until max_terms
// quotients are certified or the maximum precision is reached.
inline ContinuedFractionExpansion cf_expand(const ThetaProvider& theta, size_t max_terms, long start_prec = kDefaultPrecision) {
    ContinuedFractionExpansion best;
    for (long prec = start_prec;; prec *= 2) {
        RealBall t = theta(prec);
        bool complete = false;
        auto a = detail::cf_common_prefix(t.lower().to_mpq(), t.upper().to_mpq(), max_terms, complete);
        if (a.size() >= best.quotients.size()) {
            best.quotients = a;
            best.complete = complete;
            best.precision = prec;
            best.theta = t;
        }
        if (complete || a.size() >= max_terms || t.is_exact() || prec * 2 > max_precision()) break;
    }
    if (best.quotients.empty()) throw PrecisionExhausted("no continued fraction term could be certified");
    best.certified_terms = best.quotients.size();
    best.convergents = detail::convergents_of(best.quotients);
    return best;
}

inline ContinuedFractionExpansion cf_expand(const RealBall& theta, size_t max_terms) {
    ContinuedFractionExpansion out;
    bool complete = false;
    out.quotients = detail::cf_common_prefix(theta.lower().to_mpq(), theta.upper().to_mpq(), max_terms, complete);
    if (out.quotients.empty()) throw PrecisionExhausted("no continued fraction term could be certified");
    out.complete = complete;
    out.certified_terms = out.quotients.size();
    out.convergents = detail::convergents_of(out.quotients);
    out.precision = theta.precision();
    out.theta = theta;
    return out;
}

inline ContinuedFractionExpansion cf_expand(const mpq_class& theta, size_t max_terms) {
    ContinuedFractionExpansion out;
    bool complete = false;
    out.quotients = detail::cf_common_prefix(theta, theta, max_terms, complete);
    out.complete = complete;
    out.certified_terms = out.quotients.size();
    out.convergents = detail::convergents_of(out.quotients);
    out.theta = RealBall::from_mpq(theta, kDefaultPrecision);
    return out;
}

struct MuEstimate {
    size_t k;
    mpz_class q;
    RealBall mu;
};

// mu_k = -ln|theta - p_k/q_k| / ln q_k for convergents with q_k > 1, stopping
// at the first difference the enclosure cannot separate from zero.
inline std::vector<MuEstimate> empirical_mu(const RealBall& theta, const ContinuedFractionExpansion& cf) {
    std::vector<MuEstimate> out;
    const long wp = std::max(theta.precision(), 64L);
    for (size_t k = 0; k < cf.convergents.size(); ++k) {
        const auto& c = cf.convergents[k];
        if (c.q <= 1) continue;
        mpq_class pq(c.p, c.q);
        RealBall diff = theta - RealBall::from_mpq(pq, wp + 2 * static_cast<long>(mpz_sizeinbase(c.q.get_mpz_t(), 2)));
        if (diff.contains_zero()) break;
        RealBall num = eval_elementary(Elementary::ln, abs(diff), wp);
        RealBall den = eval_elementary(Elementary::ln, RealBall::exact(c.q, wp), wp);
        out.push_back({k, c.q, -num / den});
    }
    return out;
}

struct VerificationReport {
    RealBall theta;
    long qmax = 0;
    RealBall worst_ratio;      // min over q of ln(|theta - p'/q| q^tau / c)
    mpz_class worst_q;
    bool passed = false;
    bool side_conditions = true;
    std::optional<mpz_class> side_violation_q;
    std::optional<mpz_class> failure_q;
    size_t convergents_checked = 0;
    long precision = 0;
    std::vector<MuEstimate> mu_estimates;
};

namespace detail {

// theta as M 2^-P with |theta - M 2^-P| <= R 2^-P.
struct FixedTheta {
    long P;
    mpz_class M, R;

    FixedTheta(const RealBall& t, long P_) : P(P_) {
        Dyadic lo = t.lower().mul_2exp(P), hi = t.upper().mul_2exp(P);
        mpz_class a = lo.floor(), b = hi.ceil();
        M = (a + b) / 2;
        R = std::max(mpz_class(b - M), mpz_class(M - a));
    }
};

enum class ScanStatus { ok, refine, rational_hit };

struct QCheck {
    ScanStatus status = ScanStatus::ok;
    mpz_class p;
    mpz_class N; // q M - p 2^P
};

inline QCheck nearest(const FixedTheta& ft, const mpz_class& q) {
    QCheck out;
    mpz_class half, one;
    mpz_ui_pow_ui(one.get_mpz_t(), 2, static_cast<unsigned long>(ft.P));
    half = one / 2;
    mpz_class qm = q * ft.M, qr = q * ft.R;
    mpz_class lo = qm - qr + half, hi = qm + qr + half, plo, phi;
    mpz_fdiv_q_2exp(plo.get_mpz_t(), lo.get_mpz_t(), static_cast<mp_bitcnt_t>(ft.P));
    mpz_fdiv_q_2exp(phi.get_mpz_t(), hi.get_mpz_t(), static_cast<mp_bitcnt_t>(ft.P));
    if (plo != phi) {
        out.status = ScanStatus::refine;
        return out;
    }
    out.p = plo;
    out.N = qm - plo * one;
    if (abs(out.N) <= qr) out.status = ft.R == 0 ? ScanStatus::rational_hit : ScanStatus::refine;
    // exact half-integer q theta: both neighbours are nearest, keep the smaller |p|
    if (ft.R == 0 && 2 * abs(out.N) == one && sgn(out.p) > 0) {
        out.p -= 1;
        out.N += one;
    }
    return out;
}

} // namespace detail

// Checks ln|theta - p'/q| >= ln c - tau ln q for every q <= qmax and for the
// convergents with q_k <= 10 qmax, using the outward-rounded c and tau.
inline VerificationReport verify_diophantine(const ThetaProvider& theta, const BoundCertificate& cert, long qmax,
                                             long start_prec = kDefaultPrecision) {
    if (qmax < 1) throw DomainError("qmax must be positive");
    VerificationReport rep;
    rep.qmax = qmax;
    const long wp = 128 + static_cast<long>(cert.tau_upper().bits());
    const RealBall tau(cert.tau_upper(), Dyadic(), wp);
    const RealBall log_c(cert.log_c_lower(), Dyadic(), wp);
    const RealBall ln2 = const_ln2(wp);
    const RealBall tau_minus_one = tau - RealBall(1);

    for (long prec = start_prec;; prec *= 2) {
        if (prec > max_precision()) throw PrecisionExhausted("nearest integers to q theta cannot be certified");
        RealBall t = theta(prec);
        const long P = prec + 8;
        detail::FixedTheta ft(t, P);
        rep.theta = t;
        rep.precision = prec;
        rep.side_conditions = true;
        rep.side_violation_q.reset();
        rep.failure_q.reset();

        bool refine = false;
        std::optional<RealBall> best;
        mpz_class best_q;

        auto precise = [&](const mpz_class& q, const detail::QCheck& c) {
            // ln delta + (tau - 1) ln q - ln c, delta = |q theta - p'|
            Dyadic n(abs(c.N), -P), r(q * ft.R, -P);
            RealBall delta(n, r, wp);
            RealBall v = eval_elementary(Elementary::ln, delta, wp) - log_c;
            if (q > 1) v = v + tau_minus_one * eval_elementary(Elementary::ln, RealBall::exact(q, wp), wp);
            return v;
        };
        auto cheap_lower = [&](const mpz_class& q, const detail::QCheck& c) {
            mpz_class low = abs(c.N) - q * ft.R;
            auto lb = static_cast<long>(mpz_sizeinbase(low.get_mpz_t(), 2)) - 1 - P;
            auto qb = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
            RealBall v = RealBall(lb) * ln2 + tau_minus_one * RealBall(qb) * ln2 - log_c;
            return v.lower();
        };
        auto consider = [&](const mpz_class& q) -> bool {
            auto c = detail::nearest(ft, q);
            if (c.status == detail::ScanStatus::refine) return false;
            mpz_class two_p = 2 * abs(c.p);
            if (!(two_p < q + 1 && two_p < 3 * q)) {
                if (rep.side_conditions) rep.side_violation_q = q;
                rep.side_conditions = false;
            }
            if (c.status == detail::ScanStatus::rational_hit) {
                if (!rep.failure_q) rep.failure_q = q;
                return true;
            }
            if (best && tau_minus_one.is_positive() && cheap_lower(q, c) > best->upper()) return true;
            RealBall v = precise(q, c);
            if (!best || v.upper() < best->upper()) {
                best = v;
                best_q = q;
            }
            return true;
        };

        for (long q = 1; q <= qmax && !refine; ++q)
            if (!consider(mpz_class(q))) refine = true;
        if (refine) continue;

        // convergents beyond the linear range
        rep.convergents_checked = 0;
        const mpz_class limit = mpz_class(10) * qmax;
        try {
            auto cf = cf_expand(t, 4096);
            for (const auto& cv : cf.convergents) {
                if (cv.q <= qmax || cv.q > limit) continue;
                if (!consider(cv.q)) {
                    refine = true;
                    break;
                }
                ++rep.convergents_checked;
            }
            rep.mu_estimates = empirical_mu(t, cf);
        } catch (const PrecisionExhausted&) {
        }
        if (refine) continue;

        if (rep.failure_q) {
            rep.passed = false;
            rep.worst_q = *rep.failure_q;
            return rep;
        }
        rep.worst_ratio = *best;
        rep.worst_q = best_q;
        rep.passed = best->lower().sign() >= 0;
        return rep;
    }
}

} // namespace diophant
