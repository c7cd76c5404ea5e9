#include <random>

#include <gtest/gtest.h>

#include "diophant/intpoly.hpp"

using namespace diophant;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng, int max_deg, long bound) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    std::uniform_int_distribution<long> cd(-bound, bound);
    std::vector<mpz_class> c(static_cast<size_t>(dd(rng)) + 1);
    for (auto& x : c) x = cd(rng);
    if (sgn(c.back()) == 0) c.back() = 1;
    return IntPolynomial(std::move(c));
}

} // namespace

TEST(IntPolynomial, TextRoundTrip) {
    for (const char* s : {"3 0 4 0 3", "-5 0 1", "0", "7", "-1 1", "123456789012345678901234567890 -1"})
        EXPECT_EQ(IntPolynomial::parse(s).to_text(), s);
    EXPECT_EQ(IntPolynomial::parse("09 -08").to_text(), "9 -8");
    EXPECT_EQ(IntPolynomial::parse("1 2 0 0").degree(), 1);
    for (const char* bad : {"", "1  2", "1,2", "x", "1 -", " 1", "1 2 "})
        EXPECT_THROW(IntPolynomial::parse(bad), ParseError) << bad;
}

TEST(IntPolynomial, RingAxiomsOnRandomInputs) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        auto a = random_poly(rng, 6, 20), b = random_poly(rng, 6, 20), c = random_poly(rng, 6, 20);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a - b) + b, a);
        mpz_class x = static_cast<long>(rng() % 41) - 20;
        EXPECT_EQ((a * b).eval(x), a.eval(x) * b.eval(x));
        EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
    }
}

TEST(IntPolynomial, ExactDivisionAndPseudoDivision) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        auto a = random_poly(rng, 5, 30), b = random_poly(rng, 4, 30);
        if (b.is_zero()) continue;
        auto q = divide_exact(a * b, b);
        ASSERT_TRUE(q.has_value());
        EXPECT_EQ(*q, a);
        auto [pq, pr] = pseudo_divmod(a, b);
        int e = std::max(a.degree() - b.degree() + 1, 0);
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), b.leading().get_mpz_t(), static_cast<unsigned long>(e));
        if (a.degree() >= b.degree()) {
            EXPECT_EQ(scale * a, pq * b + pr);
            EXPECT_LT(pr.degree(), b.degree());
        }
    }
    EXPECT_FALSE(divide_exact(IntPolynomial{1, 0, 1}, IntPolynomial{-1, 1}).has_value());
    EXPECT_THROW(divide_exact(IntPolynomial{1}, IntPolynomial()), ZeroPolynomial);
}

TEST(IntPolynomial, GcdDividesBoth) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        auto g = random_poly(rng, 3, 10), a = random_poly(rng, 3, 10), b = random_poly(rng, 3, 10);
        if (g.degree() < 1) continue;
        auto d = gcd(g * a, g * b);
        EXPECT_TRUE(divide_exact(g * a, d).has_value());
        EXPECT_TRUE(divide_exact(g * b, d).has_value());
        EXPECT_TRUE(divide_exact(d, primitive_part(g)).has_value());
    }
}

TEST(IntPolynomial, SquarefreeDecomposition) {
    IntPolynomial a{-1, 1}, b{1, 0, 1}, c{2, 1};
    IntPolynomial f = a * b.pow(2) * c.pow(3);
    auto parts = squarefree_decomposition(f);
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0].first, a);
    EXPECT_EQ(parts[1].first, b);
    EXPECT_EQ(parts[1].second, 2);
    EXPECT_EQ(parts[2].first, c);
    EXPECT_EQ(parts[2].second, 3);
    EXPECT_EQ(squarefree_part(f), a * b * c);
}

TEST(IntPolynomial, Normalization) {
    IntPolynomial f{-6, 0, -4};
    EXPECT_EQ(primitive_normalize(f), (IntPolynomial{3, 0, 2}));
    EXPECT_EQ(f.content(), mpz_class(2));
    EXPECT_THROW(primitive_normalize(IntPolynomial()), ZeroPolynomial);
    EXPECT_TRUE(canonical_less(IntPolynomial{1, 1}, IntPolynomial{0, 0, 1}));
}

TEST(IntPolynomial, SignAtDyadic) {
    IntPolynomial f{-2, 0, 1};
    EXPECT_EQ(f.sign_at(Dyadic(1)), -1);
    EXPECT_EQ(f.sign_at(Dyadic(mpz_class(3), -1)), 1);
    EXPECT_EQ((IntPolynomial{-1, 2}).sign_at(Dyadic(mpz_class(1), -1)), 0);
}
