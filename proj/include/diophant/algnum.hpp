#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diophant/elementary.hpp"
#include "diophant/factor.hpp"
#include "diophant/resultant.hpp"
#include "diophant/roots.hpp"

namespace diophant {

// Which value h'(-1) takes: the literal definition max{h, |Log z|, 1} = pi,
// or the value 1 used in the constant C0.
enum class HPrimeConvention { definition, minus_one_is_one };

struct HeightReport {
    RealBall h;
    RealBall h_mod;
    int degree = 0;
    mpz_class leading;
    std::vector<RealBall> conjugate_moduli;
};

// An algebraic number: irreducible primitive minimal polynomial with positive
// leading coefficient plus a region isolating one of its roots.
class AlgebraicNumber {
public:
    // Designates the unique root of an irreducible factor of f inside hint.
    static AlgebraicNumber make(const IntPolynomial& f, const ComplexBall& hint) {
        if (f.is_zero()) throw ZeroPolynomial();
        if (f.degree() < 1) throw NoRootInHint("constant polynomial has no roots");
        auto factors = factor(f);
        for (long prec = 64;; prec *= 2) {
            std::vector<std::pair<IntPolynomial, ComplexBall>> inside;
            bool boundary = false;
            for (const auto& [p, mult] : factors) {
                for (const auto& r : roots_of_(p, prec)) {
                    if (hint.contains(r)) {
                        inside.emplace_back(p, r);
                    } else if (overlaps(hint, r)) {
                        boundary = true;
                    }
                }
            }
            if (inside.size() > 1) throw AmbiguousHint("hint contains more than one root");
            if (!boundary || prec >= 1024) {
                if (boundary) throw AmbiguousHint("a root lies on the boundary of the hint");
                if (inside.empty()) throw NoRootInHint("no root of the polynomial inside the hint");
                return AlgebraicNumber(inside[0].first, inside[0].second);
            }
        }
    }

    // The real root isolated by r, a root of the irreducible polynomial m.
    static AlgebraicNumber real_root(const IntPolynomial& m, RealRoot r) {
        if (m.degree() == 1) {
            mpq_class v(-m.coeff(0), m.coeff(1));
            v.canonicalize();
            return rational(v);
        }
        for (long bits = 16;; bits *= 2) {
            RealBall b = r.ball();
            if (m.sign_at(b.lower()) != 0 && m.sign_at(b.upper()) != 0 && sturm_count(m, b.lower(), b.upper()) == 1)
                return AlgebraicNumber(m, ComplexBall{b, RealBall(Dyadic(), Dyadic(), 0)});
            r = r.refined(bits);
        }
    }

    static AlgebraicNumber rational(const mpq_class& q) {
        mpq_class c = q;
        c.canonicalize();
        IntPolynomial m(std::vector<mpz_class>{-c.get_num(), c.get_den()});
        return AlgebraicNumber(m, point_(c, 0));
    }

    const IntPolynomial& minpoly() const { return minpoly_; }
    const ComplexBall& region() const { return region_; }
    int degree() const { return minpoly_.degree(); }
    const mpz_class& leading() const { return minpoly_.leading(); }

    bool is_real() const { return region_.is_real(); }
    bool is_zero() const { return degree() == 1 && sgn(minpoly_.coeff(0)) == 0; }

    std::optional<mpq_class> rational_value() const {
        if (degree() != 1) return std::nullopt;
        mpq_class v(-minpoly_.coeff(0), minpoly_.coeff(1));
        v.canonicalize();
        return v;
    }

    // Enclosure whose real and imaginary radii are at most about 2^-prec.
    ComplexBall enclosure(long prec) const {
        require_precision(prec);
        if (auto q = rational_value()) return point_(*q, prec);
        if (is_real()) {
            // exactly one real root lies in region.re; discard the others
            std::vector<RealRoot> cand;
            for (const auto& r : real_roots(minpoly_))
                if (!(r.hi < region_.re.lower() || r.lo > region_.re.upper())) cand.push_back(r);
            for (long bits = 8; cand.size() > 1; bits *= 2) {
                if (bits > 4 * max_precision()) throw PrecisionExhausted("cannot separate real roots near the region");
                std::vector<RealRoot> next;
                for (const auto& r : cand) {
                    RealRoot rr = r.refined(bits);
                    if (!(rr.hi < region_.re.lower() || rr.lo > region_.re.upper())) next.push_back(rr);
                }
                cand = std::move(next);
            }
            if (cand.empty()) throw InconsistentHint("region lost its root");
            return ComplexBall{cand[0].refined(prec + 2).ball(prec), RealBall(Dyadic(), Dyadic(), prec)};
        }
        for (long wp = prec;; wp *= 2) {
            std::vector<ComplexBall> hits;
            for (const auto& r : complex_roots(minpoly_, wp))
                if (overlaps(region_, r.region)) hits.push_back(r.region);
            if (hits.size() == 1) return hits[0];
            if (hits.empty()) throw InconsistentHint("region lost its root");
            if (wp > max_precision()) throw PrecisionExhausted("cannot separate roots near the region");
        }
    }

    AlgebraicNumber refined(long prec) const { return AlgebraicNumber(minpoly_, enclosure(prec)); }

    // All roots of the minimal polynomial, sorted as complex_roots sorts them.
    std::vector<ComplexBall> conjugates(long prec) const { return roots_of_(minpoly_, prec); }

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        if (!(a.minpoly_ == b.minpoly_)) return false;
        if (a.degree() == 1) return true;
        for (long prec = 64;; prec *= 2) {
            ComplexBall x = a.enclosure(prec), y = b.enclosure(prec);
            if (!overlaps(x, y)) return false;
            // both enclosures hit the same isolating region
            int hits = 0;
            for (const auto& r : complex_roots(a.minpoly_, prec))
                if (overlaps(r.region, x) || overlaps(r.region, y)) ++hits;
            if (hits == 1) return true;
            if (prec > max_precision()) throw PrecisionExhausted("cannot compare algebraic numbers");
        }
    }

    // Minimal polynomial and region; the region must isolate one root.
    static AlgebraicNumber from_parts(const IntPolynomial& minpoly, const ComplexBall& region) {
        if (!is_irreducible(minpoly) || !(primitive_normalize(minpoly) == minpoly))
            throw InconsistentHint("polynomial is not a normalized irreducible");
        AlgebraicNumber z = make(minpoly, region);
        return AlgebraicNumber(minpoly, region.contains(z.region_) ? z.region_ : region);
    }

private:
    friend AlgebraicNumber designate_root(const IntPolynomial&, const std::function<ComplexBall(long)>&);

    AlgebraicNumber(IntPolynomial m, ComplexBall r) : minpoly_(std::move(m)), region_(std::move(r)) {}

    static ComplexBall point_(const mpq_class& q, long prec) {
        RealBall re = q.get_den() == 1 ? RealBall::exact(q.get_num(), prec) : RealBall::from_mpq(q, prec > 0 ? prec : kDefaultPrecision);
        if (q.get_den() != 1 && prec == 0) re = RealBall(re.mid(), re.rad(), 0);
        return ComplexBall{re, RealBall(Dyadic(), Dyadic(), prec)};
    }

    static std::vector<ComplexBall> roots_of_(const IntPolynomial& p, long prec) {
        std::vector<ComplexBall> out;
        if (p.degree() == 1) {
            mpq_class v(-p.coeff(0), p.coeff(1));
            v.canonicalize();
            out.push_back(point_(v, prec));
            return out;
        }
        for (const auto& r : complex_roots(p, prec)) out.push_back(r.region);
        return out;
    }

    IntPolynomial minpoly_;
    ComplexBall region_;
};

namespace detail {

inline RealBall ln_max_one(const RealBall& x) {
    RealBall m = max(RealBall(1), x);
    return log(m.with_precision(std::max(m.precision(), x.precision())));
}

inline RealBall abs_complex(const ComplexBall& z) {
    RealBall n = z.norm();
    if (n.is_exact_zero()) return n;
    if (n.contains_zero()) return RealBall::from_endpoints(Dyadic(), sqrt(RealBall(n.upper(), Dyadic(), n.precision())).upper(), n.precision());
    return sqrt(n);
}

} // namespace detail

namespace detail {

// (1/d)(ln a0 + sum ln max{1, |z_j|}) together with the conjugate moduli.
inline RealBall height_value(const AlgebraicNumber& z, long prec, std::vector<RealBall>* moduli = nullptr) {
    const long wp = prec + 32;
    if (auto q = z.rational_value()) {
        mpz_class big = std::max(mpz_class(abs(q->get_num())), q->get_den());
        if (moduli) moduli->push_back(abs(RealBall::from_mpq(*q, wp)));
        return eval_elementary(Elementary::ln, RealBall::exact(big, wp), wp);
    }
    RealBall sum = eval_elementary(Elementary::ln, RealBall::exact(z.leading(), wp), wp);
    for (const auto& c : z.conjugates(wp)) {
        if (moduli) moduli->push_back(abs_complex(c));
        sum = sum + ln_max_one(c.norm().with_precision(wp)).mul_2exp(-1);
    }
    return sum / RealBall(static_cast<long>(z.degree()));
}

} // namespace detail

// h'(z) = max{h(z), |Log z|, 1}.
inline RealBall modified_height(const AlgebraicNumber& z, long prec,
                                HPrimeConvention conv = HPrimeConvention::definition) {
    if (z.is_zero()) throw DomainError("modified height of zero");
    require_precision(prec);
    if (conv == HPrimeConvention::minus_one_is_one) {
        if (auto q = z.rational_value(); q && *q == -1) return RealBall(Dyadic(1), Dyadic(), prec);
    }
    RealBall h = detail::height_value(z, prec);
    ComplexBall lg = complex_log(z.enclosure(prec + 16).with_precision(prec + 16));
    RealBall mod = detail::abs_complex(lg);
    return max(max(h, mod), RealBall(Dyadic(1), Dyadic(), prec));
}

// Logarithmic Weil height with conjugate moduli and h'.
inline HeightReport weil_height(const AlgebraicNumber& z, long prec,
                                HPrimeConvention conv = HPrimeConvention::definition) {
    require_precision(prec);
    HeightReport rep;
    rep.degree = z.degree();
    rep.leading = z.leading();
    rep.h = detail::height_value(z, prec, &rep.conjugate_moduli);
    rep.h_mod = z.is_zero() ? RealBall(Dyadic(1), Dyadic(), prec) : modified_height(z, prec, conv);
    return rep;
}

// z^n, with the minimal polynomial eliminated from y - r(x) where
// r = x^n mod minpoly is obtained by repeated squaring.
inline AlgebraicNumber power(const AlgebraicNumber& z, long n);

namespace detail {

// Polynomial with rational coefficients, ascending, reduced modulo m.
using QPoly = std::vector<mpq_class>;

inline QPoly qmulmod(const QPoly& a, const QPoly& b, const IntPolynomial& m) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    const int d = m.degree();
    mpq_class lc(m.leading());
    for (int k = static_cast<int>(r.size()) - 1; k >= d; --k) {
        mpq_class c = r[static_cast<size_t>(k)] / lc;
        if (c == 0) continue;
        for (int i = 0; i <= d; ++i) r[static_cast<size_t>(k - d + i)] -= c * mpq_class(m.coeff(i));
    }
    r.resize(static_cast<size_t>(std::min<int>(d, static_cast<int>(r.size()))));
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

inline QPoly x_pow_mod(unsigned long n, const IntPolynomial& m) {
    QPoly result{mpq_class(1)};
    QPoly base{mpq_class(0), mpq_class(1)};
    base = qmulmod(base, QPoly{mpq_class(1)}, m);
    while (n) {
        if (n & 1) result = qmulmod(result, base, m);
        n >>= 1;
        if (n) base = qmulmod(base, base, m);
    }
    return result;
}

inline ComplexBall ball_pow(ComplexBall b, unsigned long n) {
    ComplexBall r{RealBall(1), RealBall(0)};
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

} // namespace detail

// The root of an irreducible m selected by a numeric enclosure computed at
// increasing precision.
inline AlgebraicNumber designate_root(const IntPolynomial& m, const std::function<ComplexBall(long)>& enclose) {
    if (m.degree() == 1) {
        mpq_class v(-m.coeff(0), m.coeff(1));
        v.canonicalize();
        return AlgebraicNumber::rational(v);
    }
    for (long prec = 64;; prec *= 2) {
        if (prec > max_precision()) throw PrecisionExhausted("cannot designate the root");
        ComplexBall target = enclose(prec);
        std::vector<ComplexBall> hits;
        for (const auto& r : complex_roots(m, prec))
            if (overlaps(r.region, target)) hits.push_back(r.region);
        if (hits.size() == 1) return AlgebraicNumber(m, hits[0]);
        if (hits.empty()) throw InconsistentHint("no root matches the numeric value");
    }
}

inline AlgebraicNumber inverse(const AlgebraicNumber& z) {
    if (z.is_zero()) throw ZeroToNegativePower();
    IntPolynomial m = primitive_normalize(z.minpoly().reversed());
    return designate_root(m, [&](long prec) {
        ComplexBall one{RealBall(1), RealBall(0)};
        return one / z.enclosure(prec + 8).with_precision(prec + 8);
    });
}

inline AlgebraicNumber power(const AlgebraicNumber& z, long n) {
    if (n < 0) {
        if (z.is_zero()) throw ZeroToNegativePower();
        return power(inverse(z), -n);
    }
    if (n == 0) return AlgebraicNumber::rational(1);
    if (n == 1) return z;
    auto un = static_cast<unsigned long>(n);
    if (auto q = z.rational_value()) {
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), q->get_num_mpz_t(), un);
        mpz_pow_ui(r.get_den_mpz_t(), q->get_den_mpz_t(), un);
        return AlgebraicNumber::rational(r);
    }
    const IntPolynomial& m = z.minpoly();
    detail::QPoly r = detail::x_pow_mod(un, m);
    // clear denominators: D y - D r(x)
    mpz_class den = 1;
    for (const auto& c : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<IntPolynomial> g;
    for (size_t i = 0; i < std::max<size_t>(r.size(), 1); ++i) {
        mpz_class c = i < r.size() ? mpz_class(-r[i] * den) : mpz_class(0);
        g.push_back(i == 0 ? IntPolynomial(std::vector<mpz_class>{c, den}) : IntPolynomial::constant(c));
    }
    IntPolynomial res = resultant(BivariatePolynomial::in_x(m), BivariatePolynomial(g), Eliminate::x);
    IntPolynomial mp = squarefree_part(res);
    return designate_root(mp, [&](long prec) {
        long extra = static_cast<long>(std::bit_width(un)) * 2 + 16;
        ComplexBall e = z.enclosure(prec + extra).with_precision(prec + extra);
        return detail::ball_pow(e, un);
    });
}

// Multiplicative order when z is a root of unity.
inline std::optional<long> is_root_of_unity(const AlgebraicNumber& z) {
    if (z.leading() != 1) return std::nullopt;
    const IntPolynomial& m = z.minpoly();
    const long d = m.degree();
    auto totient = [](long k) {
        long r = k;
        for (long p = 2; p * p <= k; ++p) {
            if (k % p) continue;
            while (k % p == 0) k /= p;
            r -= r / p;
        }
        if (k > 1) r -= r / k;
        return r;
    };
    for (long k = 1; k <= 2 * d * d + 2; ++k) {
        if (totient(k) != d) continue;
        IntPolynomial xk = IntPolynomial::monomial(1, static_cast<int>(k)) - IntPolynomial::constant(1);
        if (divide_exact(xk, m)) return k;
    }
    return std::nullopt;
}

// Exact test of |z| = 1 through the algebraic number z * conj(z).
inline bool is_unit_modulus(const AlgebraicNumber& z) {
    const IntPolynomial& m = z.minpoly();
    if (z.is_zero()) return false;
    // |z| = 1 forces 1/z = conj(z) to be a conjugate of z
    if (!(primitive_normalize(m.reversed()) == m)) return false;
    if (auto q = z.rational_value()) return abs(*q) == 1;
    const int d = m.degree();
    // x^d m(y/x) has the roots y = x z_j; eliminating x yields all products z_i z_j
    std::vector<IntPolynomial> g(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) g[static_cast<size_t>(d - i)] = IntPolynomial::monomial(m.coeff(i), i);
    IntPolynomial prod = resultant(BivariatePolynomial::in_x(m), BivariatePolynomial(g), Eliminate::x);
    if (sgn(prod.eval(mpz_class(1))) != 0) return false;
    IntPolynomial sq = squarefree_part(prod);
    IntPolynomial rest = *divide_exact(sq, IntPolynomial{-1, 1});
    // Taylor coefficients of rest at 1 bound a root-free disk around 1
    IntPolynomial shifted;
    {
        IntPolynomial acc;
        IntPolynomial xp1{1, 1};
        for (int i = rest.degree(); i >= 0; --i) acc = acc * xp1 + IntPolynomial::constant(rest.coeff(i));
        shifted = acc;
    }
    mpz_class c0 = abs(shifted.coeff(0)), tail = 1;
    for (int i = 1; i <= shifted.degree(); ++i) tail += abs(shifted.coeff(i));
    int64_t k = static_cast<int64_t>(mpz_sizeinbase(tail.get_mpz_t(), 2)) -
                static_cast<int64_t>(mpz_sizeinbase(c0.get_mpz_t(), 2)) + 2;
    k = std::max<int64_t>(k, 1);
    const Dyadic r(mpz_class(1), -k);
    for (long prec = 64;; prec *= 2) {
        if (prec > max_precision()) throw PrecisionExhausted("cannot decide |z| = 1");
        RealBall n = z.enclosure(prec + 8).with_precision(prec + 8).norm();
        if (!n.contains(Dyadic(1))) return false;
        if (Dyadic(1) - r < n.lower() && n.upper() < Dyadic(1) + r) return true;
    }
}

} // namespace diophant
