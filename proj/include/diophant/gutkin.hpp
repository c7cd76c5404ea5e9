#pragma once

#include <string>
#include <vector>

#include "diophant/ratapprox.hpp"

namespace diophant {

// tan(n a) = P_n(t) / Q_n(t) with t = tan a.
struct TanPair {
    int n = 1;
    IntPolynomial P;
    IntPolynomial Q;
};

inline TanPair tan_multiple(int n) {
    if (n < 1) throw DomainError("tan_multiple needs n >= 1");
    TanPair tp{1, IntPolynomial::x(), IntPolynomial::constant(1)};
    const IntPolynomial t = IntPolynomial::x();
    for (int k = 1; k < n; ++k) {
        IntPolynomial P = tp.P + t * tp.Q;
        IntPolynomial Q = tp.Q - t * tp.P;
        tp = {k + 1, std::move(P), std::move(Q)};
    }
    return tp;
}

// W_n = P_n - n t Q_n.
inline IntPolynomial witness(int n) {
    if (n < 2) throw DomainError("witness needs n >= 2");
    TanPair tp = tan_multiple(n);
    return tp.P - mpz_class(n) * (IntPolynomial::x() * tp.Q);
}

struct GutkinSolution {
    int n = 0;
    AlgebraicNumber t;
    int multiplicity = 1;
    RealBall alpha; // arctan t
    AlgebraicNumber beta;
    RealBall theta; // alpha / 2 pi

    // theta at any working precision
    RealBall theta_at(long prec) const {
        const long wp = prec + 16;
        RealBall a = atan(t.enclosure(wp).re.with_precision(wp));
        return a / const_pi(wp).mul_2exp(1);
    }
};

struct GutkinSolveResult {
    std::vector<GutkinSolution> solutions;
    std::vector<AlgebraicNumber> excluded; // positive roots of W_n with Q_n(t) = 0
};

namespace detail {

// Polynomial with Gaussian integer coefficients as a real and an imaginary part.
struct GaussPoly {
    IntPolynomial re, im;

    friend GaussPoly operator*(const GaussPoly& a, const GaussPoly& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussPoly operator+(const GaussPoly& a, const GaussPoly& b) { return {a.re + b.re, a.im + b.im}; }
    GaussPoly conj() const { return {re, -im}; }
};

// Integer polynomial in s vanishing at s = (1 + i t)/(1 - i t) for every root t of m.
inline IntPolynomial beta_square_polynomial(const IntPolynomial& m) {
    // t = -i (s - 1)/(s + 1); clear the denominator (s + 1)^deg m
    const int e = m.degree();
    const IntPolynomial sm1{-1, 1}, sp1{1, 1};
    GaussPoly g{IntPolynomial(), IntPolynomial()};
    for (int k = 0; k <= e; ++k) {
        if (sgn(m.coeff(k)) == 0) continue;
        IntPolynomial base = m.coeff(k) * (sm1.pow(static_cast<unsigned>(k)) * sp1.pow(static_cast<unsigned>(e - k)));
        // (-i)^k
        switch (k % 4) {
        case 0: g.re = g.re + base; break;
        case 1: g.im = g.im - base; break;
        case 2: g.re = g.re - base; break;
        default: g.im = g.im + base; break;
        }
    }
    GaussPoly h = g * g.conj();
    return h.re;
}

} // namespace detail

// beta = e^{i alpha} with alpha = arctan t, as an algebraic number.
inline AlgebraicNumber beta_from_t(const AlgebraicNumber& t) {
    if (!t.is_real()) throw DomainError("beta_from_t needs a real t");
    IntPolynomial f = detail::beta_square_polynomial(t.minpoly()).inflate(2);
    auto factors = factor(f);
    auto numeric = [&](long prec) {
        const long wp = prec + 16;
        RealBall x = t.enclosure(wp).re.with_precision(wp);
        RealBall r = sqrt(RealBall(1) + sqr(x));
        return ComplexBall{RealBall(1) / r, x / r};
    };
    for (long prec = 64; prec <= max_precision(); prec *= 2) {
        ComplexBall z = numeric(prec);
        std::vector<const IntPolynomial*> candidates;
        for (const auto& [p, mult] : factors)
            if (p.eval(z).contains_zero()) candidates.push_back(&p);
        if (candidates.empty()) throw InconsistentHint("no factor vanishes at e^{i alpha}");
        if (candidates.size() == 1) return designate_root(*candidates[0], numeric);
    }
    throw PrecisionExhausted("cannot select the factor of the beta polynomial");
}

// As above, with an enclosure of alpha = arctan t checked against t.
inline AlgebraicNumber beta_from_t(const AlgebraicNumber& t, const RealBall& alpha) {
    if (!t.is_real()) throw DomainError("beta_from_t needs a real t");
    const long wp = std::max(alpha.precision(), 64L) + 16;
    if (!overlaps(atan(t.enclosure(wp).re.with_precision(wp)), alpha))
        throw InconsistentHint("alpha is not an enclosure of arctan t");
    return beta_from_t(t);
}

// Positive solutions t = tan alpha of n tan alpha = tan(n alpha), increasing in t.
inline GutkinSolveResult solve_detailed(int n, long prec = kDefaultPrecision) {
    if (n < 2) throw DomainError("solve needs n >= 2");
    GutkinSolveResult out;
    const TanPair tp = tan_multiple(n);
    const IntPolynomial w = witness(n);
    std::vector<std::pair<RealRoot, std::pair<IntPolynomial, int>>> positive;
    for (const auto& [p, mult] : factor(w)) {
        for (auto r : real_roots(p)) {
            // separate the root from 0; an irreducible p other than x has no root at 0
            for (long bits = 8; r.lo.sign() < 0 && r.hi.sign() > 0; bits *= 2) r = r.refined(bits);
            if (r.is_exact() ? r.lo.sign() > 0 : r.lo.sign() >= 0) positive.push_back({r, {p, mult}});
        }
    }
    std::sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
        // isolating intervals of distinct roots of a squarefree product are disjoint
        // once refined far enough
        RealRoot x = a.first, y = b.first;
        for (long bits = 8; !(x.hi <= y.lo || y.hi <= x.lo); bits *= 2) {
            x = x.refined(bits);
            y = y.refined(bits);
        }
        return x.hi <= y.lo;
    });
    for (const auto& [r, pm] : positive) {
        const auto& [p, mult] = pm;
        AlgebraicNumber t = AlgebraicNumber::real_root(p, r);
        if (divide_exact(tp.Q, p)) {
            out.excluded.push_back(t);
            continue;
        }
        GutkinSolution s{n, t, mult, RealBall(), beta_from_t(t), RealBall()};
        s.alpha = atan(t.enclosure(prec + 16).re.with_precision(prec + 16));
        s.theta = s.theta_at(prec);
        out.solutions.push_back(std::move(s));
    }
    return out;
}

inline std::vector<GutkinSolution> solve(int n, long prec = kDefaultPrecision) { return solve_detailed(n, prec).solutions; }

struct Deduction {
    std::string claim;
    std::string citation;
    std::string status; // "cited": not computed here
};

struct ClassifyConfig {
    long qmax = 100000;
    long prec = kDefaultPrecision;
    size_t terms = 60;
    HPrimeConvention convention = HPrimeConvention::minus_one_is_one;
};

struct ClassificationReport {
    GutkinSolution solution;
    HeightReport beta_height;
    bool unit_modulus = false;      // checked
    bool root_of_unity = true;      // checked
    BoundCertificate cert;
    ContinuedFractionExpansion cf;
    VerificationReport verification;
    std::vector<Deduction> deductions;
};

inline std::vector<Deduction> standard_deductions() {
    return {
        {"theta = alpha/(2 pi) is a Diophantine number",
         "Baker-Wustholz lower bound for linear forms in two logarithms, applied to q Log(beta) - 2p Log(-1) "
         "with beta algebraic, |beta| = 1 and beta not a root of unity",
         "cited"},
        {"theta is transcendental",
         "Gelfond-Schneider: for algebraic beta on the unit circle, Arg(beta)/pi is rational or transcendental; "
         "rational would make beta a root of unity",
         "cited"},
        {"alpha is transcendental",
         "Hermite-Lindemann: e^{i alpha} = beta is algebraic and alpha != 0, so alpha is not algebraic",
         "cited"},
    };
}

inline ClassificationReport classify(int n, size_t index, const ClassifyConfig& cfg = {}) {
    if (n < 2) throw NoSuchSolution("n must be at least 2");
    auto sols = solve(n, cfg.prec);
    if (index >= sols.size())
        throw NoSuchSolution("solution index " + std::to_string(index) + " out of range for n = " + std::to_string(n));
    ClassificationReport rep{sols[index], {}, false, true, {}, {}, {}, standard_deductions()};
    const GutkinSolution& s = rep.solution;
    rep.beta_height = weil_height(s.beta, cfg.prec, cfg.convention);
    rep.unit_modulus = is_unit_modulus(s.beta);
    rep.root_of_unity = is_root_of_unity(s.beta).has_value();
    rep.cert = diophantine_pair(s.beta, cfg.prec, cfg.convention);
    ThetaProvider theta = [&s](long prec) { return s.theta_at(prec); };
    rep.cf = cf_expand(theta, cfg.terms, cfg.prec);
    rep.verification = verify_diophantine(theta, rep.cert, cfg.qmax, cfg.prec);
    return rep;
}

} // namespace diophant
