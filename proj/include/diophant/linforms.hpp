#pragma once

#include <functional>
#include <vector>

#include "diophant/algnum.hpp"

namespace diophant {

// h'(L) = max{ln max |b_i|, 1}.
inline RealBall linear_form_height(const std::vector<mpz_class>& coeffs, long prec = kDefaultPrecision) {
    mpz_class big = 0;
    for (const auto& b : coeffs) big = std::max(big, mpz_class(abs(b)));
    if (sgn(big) == 0) throw AllZeroCoefficients();
    RealBall one(Dyadic(1), Dyadic(), prec);
    if (big == 1) return one;
    return max(eval_elementary(Elementary::ln, RealBall::exact(big, prec), prec), one);
}

// Constant C(m, d) of the lower bound ln|Lambda| > -C(m,d) prod h'(alpha_i) h'(L).
using ConstantFormula = std::function<RealBall(int m, int d, long prec)>;

// 18 (m+1)! m^(m+1) (32 d)^(m+2) ln(2 m d)
inline RealBall baker_wustholz_constant(int m, int d, long prec) {
    if (m < 1 || d < 1) throw DomainError("C(m, d) needs m >= 1 and d >= 1");
    mpz_class k = 18, t;
    for (int i = 2; i <= m + 1; ++i) k *= i;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(m + 1));
    k *= t;
    mpz_ui_pow_ui(t.get_mpz_t(), 32UL * static_cast<unsigned long>(d), static_cast<unsigned long>(m + 2));
    k *= t;
    const long wp = prec + 16;
    RealBall ln = eval_elementary(Elementary::ln, RealBall::exact(mpz_class(2 * m * d), wp), wp);
    return RealBall::exact(k, wp) * ln;
}

inline RealBall bw_constant(int m, int d, long prec = kDefaultPrecision) { return baker_wustholz_constant(m, d, prec); }

// Lambda(q, p) = q Log(beta) - 2 p Log(-1).
inline ComplexBall lambda(const mpz_class& q, const mpz_class& p, const AlgebraicNumber& beta, long prec) {
    require_precision(prec);
    const long wp = prec + 16 + static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2) + mpz_sizeinbase(p.get_mpz_t(), 2));
    ComplexBall lg = complex_log(beta.enclosure(wp).with_precision(wp));
    RealBall qb = RealBall::exact(q, wp);
    RealBall two_p_pi = RealBall::exact(2 * p, wp) * const_pi(wp);
    return ComplexBall{qb * lg.re, qb * lg.im - two_p_pi};
}

struct BoundCertificate {
    int m = 2;
    int d = 0;
    std::vector<RealBall> hprimes; // h'(beta), h'(-1)
    RealBall C_md;
    RealBall C0;
    RealBall log_c; // ln c = -ln(2 pi) - C0 ln 3
    RealBall tau;   // C0 + 1
    HPrimeConvention convention = HPrimeConvention::minus_one_is_one;

    // Outward-rounded values used by every certified comparison.
    Dyadic tau_upper() const { return tau.upper(); }
    Dyadic log_c_lower() const { return log_c.lower(); }
};

// The pair (c, tau) with |theta - p/q| >= c / q^tau, theta = Arg(beta) / 2 pi.
inline BoundCertificate diophantine_pair(const AlgebraicNumber& beta, long prec,
                                         HPrimeConvention conv = HPrimeConvention::minus_one_is_one,
                                         const ConstantFormula& constant = baker_wustholz_constant) {
    require_precision(prec);
    if (!is_unit_modulus(beta)) throw NotUnitModulus();
    if (auto order = is_root_of_unity(beta)) throw RootOfUnity(*order);
    const long wp = prec + 64;
    BoundCertificate cert;
    cert.m = 2;
    cert.d = beta.degree();
    cert.convention = conv;
    cert.hprimes.push_back(modified_height(beta, wp, conv));
    cert.hprimes.push_back(modified_height(AlgebraicNumber::rational(-1), wp, conv));
    cert.C_md = constant(cert.m, cert.d, wp);
    cert.C0 = cert.C_md * cert.hprimes[0] * cert.hprimes[1];
    cert.tau = cert.C0 + RealBall(1);
    RealBall two_pi = const_pi(wp).mul_2exp(1);
    RealBall ln3 = eval_elementary(Elementary::ln, RealBall(3).with_precision(wp), wp);
    cert.log_c = -eval_elementary(Elementary::ln, two_pi, wp) - cert.C0 * ln3;
    return cert;
}

} // namespace diophant
