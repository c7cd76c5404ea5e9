#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "diophant/intpoly.hpp"

namespace diophant {

namespace detail {

// Polynomials over Z/p for a word-sized odd prime p, ascending coefficients.
class ZpPoly {
public:
    using Coeffs = std::vector<uint64_t>;

    explicit ZpPoly(uint64_t p) : p_(p) {}

    uint64_t modulus() const { return p_; }

    Coeffs reduce(const IntPolynomial& f) const {
        Coeffs v(f.coeffs().size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p_);
        trim(v);
        return v;
    }

    static void trim(Coeffs& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    static int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

    uint64_t mul(uint64_t a, uint64_t b) const { return static_cast<uint64_t>((unsigned __int128)a * b % p_); }
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p_; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p_ - b) % p_; }

    uint64_t pow(uint64_t b, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    uint64_t inv(uint64_t a) const { return pow(a, p_ - 2); }

    Coeffs add(const Coeffs& a, const Coeffs& b) const {
        Coeffs r(std::max(a.size(), b.size()));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
        trim(r);
        return r;
    }

    Coeffs sub(const Coeffs& a, const Coeffs& b) const {
        Coeffs r(std::max(a.size(), b.size()));
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
        trim(r);
        return r;
    }

    Coeffs mul(const Coeffs& a, const Coeffs& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<unsigned __int128> acc(a.size() + b.size() - 1);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) acc[i + j] += (unsigned __int128)a[i] * b[j];
        Coeffs r(acc.size());
        for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<uint64_t>(acc[i] % p_);
        trim(r);
        return r;
    }

    Coeffs scale(const Coeffs& a, uint64_t s) const {
        Coeffs r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], s);
        trim(r);
        return r;
    }

    Coeffs monic(const Coeffs& a) const { return a.empty() ? a : scale(a, inv(a.back())); }

    std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b) const {
        if (deg(a) < deg(b)) return {{}, a};
        Coeffs r = a;
        Coeffs q(a.size() - b.size() + 1);
        uint64_t li = inv(b.back());
        for (int k = deg(a); k >= deg(b); --k) {
            uint64_t c = mul(r[static_cast<size_t>(k)], li);
            q[static_cast<size_t>(k - deg(b))] = c;
            if (c == 0) continue;
            for (size_t i = 0; i < b.size(); ++i) {
                size_t idx = static_cast<size_t>(k - deg(b)) + i;
                r[idx] = sub(r[idx], mul(c, b[i]));
            }
        }
        trim(q);
        trim(r);
        return {q, r};
    }

    Coeffs rem(const Coeffs& a, const Coeffs& b) const { return divmod(a, b).second; }

    Coeffs gcd(Coeffs a, Coeffs b) const {
        while (!b.empty()) {
            Coeffs r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s a + t b = gcd(a, b) (monic)
    void ext_gcd(const Coeffs& a, const Coeffs& b, Coeffs& g, Coeffs& s, Coeffs& t) const {
        Coeffs r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            Coeffs ns = sub(s0, mul(q, s1));
            Coeffs nt = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(ns);
            t0 = std::move(t1);
            t1 = std::move(nt);
        }
        uint64_t li = inv(r0.back());
        g = scale(r0, li);
        s = scale(s0, li);
        t = scale(t0, li);
    }

    Coeffs derivative(const Coeffs& a) const {
        if (a.size() <= 1) return {};
        Coeffs r(a.size() - 1);
        for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p_);
        trim(r);
        return r;
    }

    Coeffs powmod(Coeffs base, const mpz_class& e, const Coeffs& m) const {
        Coeffs r{1};
        base = rem(base, m);
        size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = nbits; i-- > 0;) {
            r = rem(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
        }
        return r;
    }

    // Distinct-degree factorization of a monic squarefree polynomial.
    std::vector<std::pair<Coeffs, int>> distinct_degree(Coeffs f) const {
        std::vector<std::pair<Coeffs, int>> out;
        Coeffs x{0, 1};
        Coeffs h = x;
        for (int i = 1; 2 * i <= deg(f); ++i) {
            h = powmod(h, mpz_class(static_cast<unsigned long>(p_)), f);
            Coeffs g = gcd(sub(h, x), f);
            if (deg(g) > 0) {
                out.emplace_back(g, i);
                f = divmod(f, g).first;
                h = rem(h, f);
            }
        }
        if (deg(f) > 0) out.emplace_back(f, deg(f));
        return out;
    }

    // Cantor-Zassenhaus splitting of a product of monic irreducibles of degree d.
    void equal_degree(const Coeffs& g, int d, std::mt19937_64& rng, std::vector<Coeffs>& out) const {
        if (deg(g) == d) {
            out.push_back(g);
            return;
        }
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p_, static_cast<unsigned long>(d));
        e = (e - 1) / 2;
        std::uniform_int_distribution<uint64_t> dist(0, p_ - 1);
        while (true) {
            Coeffs a(static_cast<size_t>(deg(g)));
            for (auto& c : a) c = dist(rng);
            trim(a);
            if (deg(a) < 1) continue;
            Coeffs b = sub(powmod(a, e, g), Coeffs{1});
            Coeffs u = gcd(b, g);
            if (deg(u) > 0 && deg(u) < deg(g)) {
                equal_degree(u, d, rng, out);
                equal_degree(divmod(g, u).first, d, rng, out);
                return;
            }
        }
    }

private:
    uint64_t p_;
};

inline bool is_small_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Coefficient arithmetic modulo m on integer polynomials.
inline IntPolynomial mod_coeffs(const IntPolynomial& f, const mpz_class& m) {
    std::vector<mpz_class> v = f.coeffs();
    for (auto& c : v) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    return IntPolynomial(std::move(v));
}

inline IntPolynomial symmetric_mod(const IntPolynomial& f, const mpz_class& m) {
    std::vector<mpz_class> v = f.coeffs();
    mpz_class half = m / 2;
    for (auto& c : v) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    return IntPolynomial(std::move(v));
}

inline IntPolynomial from_zp(const ZpPoly::Coeffs& a) {
    std::vector<mpz_class> v;
    v.reserve(a.size());
    for (uint64_t c : a) v.emplace_back(static_cast<unsigned long>(c));
    return IntPolynomial(std::move(v));
}

// Division by a monic polynomial with coefficients reduced mod m.
inline std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& a, const IntPolynomial& h,
                                                            const mpz_class& m) {
    int dh = h.degree();
    if (a.degree() < dh) return {IntPolynomial(), mod_coeffs(a, m)};
    std::vector<mpz_class> r = a.coeffs();
    std::vector<mpz_class> q(static_cast<size_t>(a.degree() - dh) + 1);
    for (int k = a.degree(); k >= dh; --k) {
        mpz_class c = r[static_cast<size_t>(k)];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        q[static_cast<size_t>(k - dh)] = c;
        if (sgn(c) == 0) continue;
        for (int i = 0; i <= dh; ++i)
            mpz_submul(r[static_cast<size_t>(k - dh + i)].get_mpz_t(), c.get_mpz_t(), h.coeffs()[static_cast<size_t>(i)].get_mpz_t());
    }
    return {mod_coeffs(IntPolynomial(std::move(q)), m), mod_coeffs(IntPolynomial(std::move(r)), m)};
}

// One quadratic Hensel step: from f = g h, s g + t h = 1 (mod m) with h monic
// to the same relations mod m^2.
inline void hensel_step(const IntPolynomial& f, IntPolynomial& g, IntPolynomial& h, IntPolynomial& s,
                        IntPolynomial& t, const mpz_class& m) {
    mpz_class m2 = m * m;
    IntPolynomial e = mod_coeffs(f - g * h, m2);
    auto [q, r] = divmod_monic(s * e, h, m2);
    IntPolynomial g2 = mod_coeffs(g + t * e + q * g, m2);
    IntPolynomial h2 = mod_coeffs(h + r, m2);
    IntPolynomial b = mod_coeffs(s * g2 + t * h2 - IntPolynomial::constant(1), m2);
    auto [c, d] = divmod_monic(s * b, h2, m2);
    s = mod_coeffs(s - d, m2);
    t = mod_coeffs(t - t * b - c * g2, m2);
    g = std::move(g2);
    h = std::move(h2);
}

// Lift f = lc(f) * prod(factors) (mod p, factors monic) to mod p^(2^k) >= bound.
inline std::vector<IntPolynomial> hensel_lift(const IntPolynomial& f, const std::vector<ZpPoly::Coeffs>& factors,
                                              const ZpPoly& zp, const mpz_class& bound, mpz_class& modulus) {
    uint64_t p = zp.modulus();
    std::vector<mpz_class> steps{mpz_class(static_cast<unsigned long>(p))};
    while (steps.back() <= bound) steps.push_back(steps.back() * steps.back());
    modulus = steps.back();

    std::vector<IntPolynomial> lifted;
    IntPolynomial rest = f;
    for (size_t i = 0; i + 1 < factors.size(); ++i) {
        const ZpPoly::Coeffs& hp = factors[i];
        ZpPoly::Coeffs restp = zp.reduce(rest);
        ZpPoly::Coeffs gp = zp.divmod(restp, hp).first;
        ZpPoly::Coeffs gg, sp, tp;
        zp.ext_gcd(gp, hp, gg, sp, tp);
        IntPolynomial g = from_zp(gp), h = from_zp(hp), s = from_zp(sp), t = from_zp(tp);
        for (size_t k = 0; k + 1 < steps.size(); ++k) hensel_step(rest, g, h, s, t, steps[k]);
        lifted.push_back(h);
        rest = g;
    }
    // the last factor: rest = lc * g_r, make it monic mod modulus
    mpz_class lc = rest.leading(), inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t());
    lifted.push_back(mod_coeffs(inv * rest, modulus));
    return lifted;
}

inline mpz_class isqrt_ceil(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) ++r;
    return r;
}

// Zassenhaus factorization of a primitive squarefree polynomial with
// positive leading coefficient and nonzero constant term.
inline std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& f) {
    if (f.degree() <= 1) return {f};
    const mpz_class& lc = f.leading();

    // smallest odd prime keeping the degree and the squarefree property
    uint64_t p = 3;
    for (;; p += 2) {
        if (!is_small_prime(p)) continue;
        if (mpz_divisible_ui_p(lc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        ZpPoly zp(p);
        auto fp = zp.reduce(f);
        if (ZpPoly::deg(zp.gcd(fp, zp.derivative(fp))) == 0) break;
    }
    ZpPoly zp(p);
    auto fp = zp.monic(zp.reduce(f));
    std::mt19937_64 rng(0x5eedULL + p);
    std::vector<ZpPoly::Coeffs> modular;
    for (auto& [g, d] : zp.distinct_degree(fp)) zp.equal_degree(g, d, rng, modular);
    if (modular.size() == 1) return {f};

    // Mignotte: any factor has coefficients below 2^deg ||f||_2.
    mpz_class norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    mpz_class bound = isqrt_ceil(norm2);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(f.degree()));
    bound *= 2 * abs(lc);

    mpz_class modulus;
    std::vector<IntPolynomial> lifted = hensel_lift(f, modular, zp, bound, modulus);

    std::vector<IntPolynomial> found;
    IntPolynomial rest = f;
    size_t subset_size = 1;
    while (2 * subset_size <= lifted.size()) {
        const size_t r = lifted.size();
        std::vector<size_t> idx(subset_size);
        for (size_t i = 0; i < subset_size; ++i) idx[i] = i;
        bool matched = false;
        while (true) {
            IntPolynomial cand = IntPolynomial::constant(rest.leading());
            for (size_t i : idx) cand = mod_coeffs(cand * lifted[i], modulus);
            cand = primitive_part(symmetric_mod(cand, modulus));
            if (auto q = divide_exact(rest, cand)) {
                found.push_back(primitive_normalize(cand));
                rest = *q;
                for (size_t k = idx.size(); k-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[k]));
                matched = true;
                break;
            }
            // next combination
            size_t k = subset_size;
            while (k > 0 && idx[k - 1] == r - subset_size + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (size_t j = k; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!matched) ++subset_size;
    }
    found.push_back(primitive_normalize(rest));
    return found;
}

} // namespace detail

// Irreducible factorization over Q of a nonzero integer polynomial.
// Factors are primitive with positive leading coefficient, listed by degree
// then by ascending coefficient sequence; their product with multiplicities
// equals primitive_normalize(f).
inline std::vector<std::pair<IntPolynomial, int>> factor(const IntPolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    std::vector<std::pair<IntPolynomial, int>> out;
    if (f.degree() < 1) return out;
    IntPolynomial p = primitive_normalize(f);
    int zero_mult = 0;
    while (sgn(p.coeff(0)) == 0) {
        std::vector<mpz_class> v(p.coeffs().begin() + 1, p.coeffs().end());
        p = IntPolynomial(std::move(v));
        ++zero_mult;
    }
    if (zero_mult) out.emplace_back(IntPolynomial::x(), zero_mult);
    for (auto& [part, mult] : squarefree_decomposition(p))
        for (auto& irr : detail::factor_squarefree(part)) out.emplace_back(std::move(irr), mult);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first == b.first) return a.second < b.second;
        return canonical_less(a.first, b.first);
    });
    return out;
}

inline bool is_irreducible(const IntPolynomial& f) {
    auto fs = factor(f);
    return fs.size() == 1 && fs[0].second == 1;
}

} // namespace diophant
