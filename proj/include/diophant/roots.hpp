#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "diophant/intpoly.hpp"

namespace diophant {

// A real root isolated by an interval with dyadic endpoints. Either lo == hi
// is the root itself, or the root is the unique root of `poly` in the open
// interval (lo, hi) and poly changes sign across it.
struct RealRoot {
    Dyadic lo;
    Dyadic hi;
    int multiplicity = 1;
    IntPolynomial poly; // squarefree, the root is simple

    bool is_exact() const { return lo == hi; }

    RealBall ball(long prec = 0) const { return RealBall::from_endpoints(lo, hi, prec); }

    Dyadic width() const { return hi - lo; }

    // Bisect until hi - lo <= 2^-bits.
    RealRoot refined(long bits) const {
        RealRoot r = *this;
        if (r.is_exact()) return r;
        Dyadic target(mpz_class(1), -bits);
        int slo = r.poly.sign_at(r.lo);
        while (r.hi - r.lo > target) {
            Dyadic m = (r.lo + r.hi).mul_2exp(-1);
            int sm = r.poly.sign_at(m);
            if (sm == 0) {
                r.lo = r.hi = m;
                break;
            }
            if (sm == slo)
                r.lo = m;
            else
                r.hi = m;
        }
        return r;
    }
};

// A complex root with a certified isolating rectangle.
struct IsolatedRoot {
    ComplexBall region;
    int multiplicity = 1;
    IntPolynomial parent;

    bool is_real() const { return region.is_real(); }
};

namespace detail {

inline std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& g) {
    std::vector<IntPolynomial> s{g, g.derivative()};
    while (!s.back().is_zero() && s.back().degree() > 0) {
        const IntPolynomial& a = s[s.size() - 2];
        const IntPolynomial& b = s.back();
        IntPolynomial r = pseudo_divmod(a, b).second;
        if (r.is_zero()) break;
        // prem = lc(b)^k a - q b; the Sturm remainder is -rem(a, b)
        int k = a.degree() - b.degree() + 1;
        bool flip = sgn(b.leading()) < 0 && (k % 2 == 1);
        r = primitive_part(r);
        s.push_back(flip ? r : -r);
    }
    return s;
}

inline int sign_variations(const std::vector<IntPolynomial>& s, const Dyadic& x) {
    int count = 0, last = 0;
    for (const auto& p : s) {
        int v = p.sign_at(x);
        if (v == 0) continue;
        if (last != 0 && v != last) ++count;
        last = v;
    }
    return count;
}

// Power of two strictly above every root modulus (Cauchy bound).
inline Dyadic root_bound_pow2(const IntPolynomial& f) {
    const mpz_class& lc = f.leading();
    mpz_class m = 0;
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, mpz_class(abs(f.coeff(i))));
    mpz_class q = m / abs(lc) + 2;
    auto bits = static_cast<int64_t>(mpz_sizeinbase(q.get_mpz_t(), 2));
    return Dyadic(mpz_class(1), bits);
}

struct SturmIsolator {
    const IntPolynomial& g;
    std::vector<IntPolynomial> seq;
    std::vector<std::pair<Dyadic, Dyadic>> out;

    // Roots in (a, b], or in (a, b) when b_excluded.
    void run(const Dyadic& a, const Dyadic& b, bool b_excluded) {
        int n = sign_variations(seq, a) - sign_variations(seq, b);
        if (b_excluded) {
            --n;
        } else if (g.sign_at(b) == 0) {
            // record after the roots below b to keep ascending order
            run(a, b, true);
            out.emplace_back(b, b);
            return;
        }
        if (n <= 0) return;
        if (n == 1 && g.sign_at(a) != 0 && !b_excluded) {
            out.emplace_back(a, b);
            return;
        }
        Dyadic m = (a + b).mul_2exp(-1);
        run(a, m, false);
        run(m, b, b_excluded);
    }
};

inline std::vector<std::pair<Dyadic, Dyadic>> isolate_squarefree(const IntPolynomial& g) {
    if (g.degree() < 1) return {};
    Dyadic b = root_bound_pow2(g);
    SturmIsolator iso{g, sturm_sequence(g), {}};
    iso.run(-b, b, false);
    return iso.out;
}

} // namespace detail

// Number of distinct real roots of f in (a, b].
inline int sturm_count(const IntPolynomial& f, const Dyadic& a, const Dyadic& b) {
    IntPolynomial g = squarefree_part(f);
    auto seq = detail::sturm_sequence(g);
    return detail::sign_variations(seq, a) - detail::sign_variations(seq, b);
}

// Distinct real roots in ascending order, each isolated with its multiplicity.
inline std::vector<RealRoot> real_roots(const IntPolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    std::vector<RealRoot> out;
    if (f.degree() < 1) return out;
    auto parts = squarefree_decomposition(f);
    IntPolynomial g = IntPolynomial::constant(1);
    for (const auto& [p, m] : parts) g = g * p;
    for (auto& [lo, hi] : detail::isolate_squarefree(g)) {
        for (const auto& [p, m] : parts) {
            int sl = p.sign_at(lo), sh = p.sign_at(hi);
            bool here = lo == hi ? sl == 0 : (sl != 0 && sh != 0 && sl != sh);
            if (here) {
                out.push_back(RealRoot{lo, hi, m, p});
                break;
            }
        }
    }
    return out;
}

namespace detail {

using CD = std::complex<double>;

// Simultaneous Aberth-Ehrlich iteration in double precision.
inline std::vector<CD> aberth_double(const IntPolynomial& f) {
    const int n = f.degree();
    int64_t top = 0;
    for (const auto& c : f.coeffs())
        if (sgn(c) != 0) top = std::max<int64_t>(top, static_cast<int64_t>(mpz_sizeinbase(c.get_mpz_t(), 2)));
    std::vector<double> a(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        long e = 0;
        double d = mpz_get_d_2exp(&e, f.coeffs()[static_cast<size_t>(i)].get_mpz_t());
        a[static_cast<size_t>(i)] = std::ldexp(d, static_cast<int>(e - top));
    }
    double radius = 0;
    for (int k = 1; k <= n; ++k)
        radius = std::max(radius, std::pow(std::abs(a[static_cast<size_t>(n - k)] / a[static_cast<size_t>(n)]), 1.0 / k));
    if (radius == 0 || !std::isfinite(radius)) radius = 1;
    CD centre(-a[static_cast<size_t>(n - 1)] / (n * a[static_cast<size_t>(n)]), 0);
    std::vector<CD> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<size_t>(k)] = centre + std::polar(radius, 2 * std::numbers::pi * k / n + 0.4);

    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            CD zi = z[static_cast<size_t>(i)], p = 0, dp = 0;
            for (int k = n; k >= 0; --k) {
                dp = dp * zi + p;
                p = p * zi + a[static_cast<size_t>(k)];
            }
            if (p == CD(0)) continue;
            CD ratio = p / dp;
            CD s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (zi - z[static_cast<size_t>(j)]);
            CD step = ratio / (1.0 - ratio * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[static_cast<size_t>(i)] -= step;
            worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(zi)));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

// Complex dyadic point with rounded arithmetic.
struct CPoint {
    Dyadic re, im;
};

inline Dyadic rnd(const Dyadic& x, long wp) { return x.rounded(wp, Round::nearest); }

inline CPoint cmul(const CPoint& a, const CPoint& b, long wp) {
    return {rnd(a.re * b.re - a.im * b.im, wp), rnd(a.re * b.im + a.im * b.re, wp)};
}

inline CPoint cadd(const CPoint& a, const CPoint& b) { return {a.re + b.re, a.im + b.im}; }

inline CPoint csub(const CPoint& a, const CPoint& b) { return {a.re - b.re, a.im - b.im}; }

inline CPoint cdiv(const CPoint& a, const CPoint& b, long wp) {
    Dyadic den = b.re * b.re + b.im * b.im;
    Dyadic nr = a.re * b.re + a.im * b.im;
    Dyadic ni = a.im * b.re - a.re * b.im;
    return {div_round(nr, den, wp, Round::nearest), div_round(ni, den, wp, Round::nearest)};
}

inline bool czero(const CPoint& a) { return a.re.is_zero() && a.im.is_zero(); }

inline int64_t cmag(const CPoint& a) {
    int64_t m = INT64_MIN;
    if (!a.re.is_zero()) m = std::max(m, a.re.magnitude());
    if (!a.im.is_zero()) m = std::max(m, a.im.magnitude());
    return m;
}

inline void aberth_refine(const IntPolynomial& f, std::vector<CPoint>& z, long wp, int max_iter) {
    const int n = f.degree();
    for (int iter = 0; iter < max_iter; ++iter) {
        bool done = true;
        for (int i = 0; i < n; ++i) {
            const CPoint zi = z[static_cast<size_t>(i)];
            CPoint p{Dyadic(), Dyadic()}, dp{Dyadic(), Dyadic()};
            for (int k = n; k >= 0; --k) {
                dp = cadd(cmul(dp, zi, wp), p);
                p = cadd(cmul(p, zi, wp), CPoint{Dyadic(f.coeffs()[static_cast<size_t>(k)]), Dyadic()});
            }
            if (czero(p) || czero(dp)) continue;
            CPoint ratio = cdiv(p, dp, wp);
            CPoint s{Dyadic(), Dyadic()};
            bool clash = false;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                CPoint d = csub(zi, z[static_cast<size_t>(j)]);
                if (czero(d)) {
                    clash = true;
                    break;
                }
                s = cadd(s, cdiv(CPoint{Dyadic(1), Dyadic()}, d, wp));
            }
            if (clash) continue;
            CPoint den = csub(CPoint{Dyadic(1), Dyadic()}, cmul(ratio, s, wp));
            if (czero(den)) continue;
            CPoint step = cdiv(ratio, den, wp);
            z[static_cast<size_t>(i)] = {rnd(zi.re - step.re, wp), rnd(zi.im - step.im, wp)};
            int64_t scale = std::max<int64_t>(0, czero(zi) ? 0 : cmag(zi));
            if (!czero(step) && cmag(step) > scale - wp + 8) done = false;
        }
        if (done) break;
    }
}

// Force conjugate symmetry on approximations; false if the pairing fails.
inline bool symmetrize(std::vector<CPoint>& z, long wp) {
    std::vector<size_t> upper, lower;
    for (size_t i = 0; i < z.size(); ++i) {
        int64_t scale = std::max<int64_t>(0, czero(z[i]) ? 0 : cmag(z[i]));
        if (z[i].im.is_zero() || z[i].im.magnitude() < scale - wp / 2) {
            z[i].im = Dyadic();
            continue;
        }
        (z[i].im.sign() > 0 ? upper : lower).push_back(i);
    }
    if (upper.size() != lower.size()) return false;
    std::vector<bool> used(lower.size(), false);
    for (size_t u : upper) {
        size_t best = lower.size();
        Dyadic best_d;
        for (size_t k = 0; k < lower.size(); ++k) {
            if (used[k]) continue;
            const CPoint& w = z[lower[k]];
            Dyadic d = (w.re - z[u].re).abs() + (w.im + z[u].im).abs();
            if (best == lower.size() || d < best_d) {
                best = k;
                best_d = d;
            }
        }
        used[best] = true;
        z[lower[best]] = {z[u].re, -z[u].im};
    }
    return true;
}

// Certified regions: squares of half-width n |W_i| around each approximation,
// where W_i is the Weierstrass correction. When these are pairwise disjoint,
// each holds exactly one root.
inline std::optional<std::vector<ComplexBall>> certify(const IntPolynomial& f, const std::vector<CPoint>& z, long wp) {
    const int n = f.degree();
    std::vector<ComplexBall> pts;
    pts.reserve(z.size());
    for (const auto& c : z) pts.push_back(ComplexBall{RealBall(c.re, Dyadic(), wp), RealBall(c.im, Dyadic(), wp)});
    ComplexBall lc(RealBall::exact(f.leading(), wp));
    std::vector<Dyadic> radius(z.size());
    for (int i = 0; i < n; ++i) {
        const ComplexBall& zi = pts[static_cast<size_t>(i)];
        ComplexBall den = lc;
        for (int j = 0; j < n; ++j)
            if (j != i) den = den * (zi - pts[static_cast<size_t>(j)]);
        if (den.contains_zero()) return std::nullopt;
        ComplexBall w = f.eval(zi) / den;
        Dyadic mag = abs(w.re).upper() + abs(w.im).upper();
        radius[static_cast<size_t>(i)] = detail::mag_up(Dyadic(n) * mag);
    }
    // conjugate pairs share the larger radius
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < z.size(); ++j)
            if (i != j && z[i].re == z[j].re && z[i].im == -z[j].im && !z[i].im.is_zero())
                radius[i] = std::max(radius[i], radius[j]);
    std::vector<ComplexBall> regions;
    for (size_t i = 0; i < z.size(); ++i) {
        const Dyadic& r = radius[i];
        RealBall re(z[i].re, r, wp);
        // a disk centred on the real axis isolating one root of a real
        // polynomial holds a real root
        RealBall im = z[i].im.is_zero() ? RealBall(Dyadic(), Dyadic(), wp) : RealBall(z[i].im, r, wp);
        regions.push_back(ComplexBall{re, im});
    }
    for (size_t i = 0; i < regions.size(); ++i) {
        // the disk around a real centre must not reach a neighbour's square
        ComplexBall wide_i{regions[i].re, RealBall(z[i].im, radius[i], wp)};
        for (size_t j = i + 1; j < regions.size(); ++j) {
            ComplexBall wide_j{regions[j].re, RealBall(z[j].im, radius[j], wp)};
            if (overlaps(wide_i, wide_j)) return std::nullopt;
        }
    }
    return regions;
}

} // namespace detail

// Certified isolation of all complex roots of a squarefree polynomial.
// Regions are pairwise disjoint, closed under conjugation, and sorted by
// real then imaginary midpoint. Real roots have an exactly zero imaginary part.
inline std::vector<IsolatedRoot> complex_roots(const IntPolynomial& f, long prec) {
    if (f.is_zero()) throw ZeroPolynomial();
    require_precision(prec);
    std::vector<IsolatedRoot> out;
    const int n = f.degree();
    if (n < 1) return out;

    std::vector<detail::CPoint> z;
    int k = 0;
    for (auto c : detail::aberth_double(f)) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) c = std::polar(1.0, 0.7 * ++k);
        Dyadic re = Dyadic::from_mpq(mpq_class(c.real()), 53, Round::nearest);
        Dyadic im = Dyadic::from_mpq(mpq_class(c.imag()), 53, Round::nearest);
        z.push_back({re, im});
    }
    long wp = prec + 32;
    int iterations = 200;
    while (true) {
        if (wp > max_precision() + 32) throw PrecisionExhausted("complex root isolation needs more than the maximum precision");
        detail::aberth_refine(f, z, wp, iterations);
        auto zs = z;
        if (detail::symmetrize(zs, wp)) {
            if (auto regions = detail::certify(f, zs, wp)) {
                for (auto& r : *regions) out.push_back(IsolatedRoot{r, 1, f});
                break;
            }
        }
        wp *= 2;
        iterations = 60;
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
        int c = cmp(a.region.re.mid(), b.region.re.mid());
        if (c != 0) return c < 0;
        return a.region.im.mid() < b.region.im.mid();
    });
    return out;
}

} // namespace diophant
