#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "diophant/factor.hpp"

using namespace diophant;

namespace {

using Multiset = std::map<std::string, int>;

Multiset as_multiset(const std::vector<std::pair<IntPolynomial, int>>& fs) {
    Multiset m;
    for (const auto& [p, k] : fs) m[p.to_text()] += k;
    return m;
}

IntPolynomial expand(const std::vector<std::pair<IntPolynomial, int>>& fs) {
    IntPolynomial out = IntPolynomial::constant(1);
    for (const auto& [p, k] : fs) out = out * p.pow(static_cast<unsigned>(k));
    return out;
}

// Eisenstein at p: irreducible by construction.
IntPolynomial eisenstein(std::mt19937_64& rng, int degree, long bound) {
    const long primes[] = {2, 3, 5, 7};
    for (;;) {
        long p = primes[rng() % 4];
        std::uniform_int_distribution<long> cd(-bound / p, bound / p);
        std::vector<mpz_class> c(static_cast<size_t>(degree) + 1);
        for (int i = 0; i < degree; ++i) c[static_cast<size_t>(i)] = p * cd(rng);
        std::uniform_int_distribution<long> ld(1, bound);
        c.back() = ld(rng) * (rng() % 2 ? 1 : -1);
        if (c.back() % p == 0) continue;
        if (c[0] == 0 || c[0] % (p * p) == 0) continue;
        return primitive_normalize(IntPolynomial(std::move(c)));
    }
}

} // namespace

TEST(Factor, KnownFactorizations) {
    auto f = factor(IntPolynomial{-1, 0, 0, 0, 1});
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].first.to_text(), "-1 1");
    EXPECT_EQ(f[1].first.to_text(), "1 1");
    EXPECT_EQ(f[2].first.to_text(), "1 0 1");

    // x^8 + 2x^6 + x^4 - 4x^2 = x^2 (x - 1)(x + 1)(x^2 - x + 2)(x^2 + x + 2)
    auto g = factor(IntPolynomial{0, 0, -4, 0, 1, 0, 2, 0, 1});
    EXPECT_EQ(as_multiset(g), (Multiset{{"0 1", 2}, {"-1 1", 1}, {"1 1", 1}, {"2 -1 1", 1}, {"2 1 1", 1}}));
}

TEST(Factor, CyclotomicDecompositionOfXnMinusOne) {
    for (int n : {6, 12, 15, 30}) {
        IntPolynomial f = IntPolynomial::monomial(1, n) - IntPolynomial::constant(1);
        auto fs = factor(f);
        int divisors = 0;
        for (int d = 1; d <= n; ++d) divisors += n % d == 0;
        EXPECT_EQ(static_cast<int>(fs.size()), divisors) << n;
        EXPECT_EQ(expand(fs), f);
    }
}

TEST(Factor, SwinnertonDyerStyleRecombination) {
    // (x^2 - 2)(x^2 - 3) splits modulo every prime; x^4 - 10x^2 + 1 is irreducible
    EXPECT_TRUE(is_irreducible(IntPolynomial{1, 0, -10, 0, 1}));
    EXPECT_EQ(factor(IntPolynomial{6, 0, -5, 0, 1}).size(), 2u);
}

TEST(Factor, ContentAndSignAreDropped) {
    auto fs = factor(IntPolynomial{-6, 0, -6});
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].first.to_text(), "1 0 1");
    EXPECT_TRUE(factor(IntPolynomial{5}).empty());
    EXPECT_THROW(factor(IntPolynomial()), ZeroPolynomial);
}

TEST(Factor, RandomEisensteinProducts) {
    std::mt19937_64 rng(20240607);
    for (int trial = 0; trial < 60; ++trial) {
        int count = 1 + static_cast<int>(rng() % 3);
        Multiset expected;
        IntPolynomial f = IntPolynomial::constant(1);
        for (int i = 0; i < count; ++i) {
            IntPolynomial p = eisenstein(rng, 1 + static_cast<int>(rng() % 6), 50);
            expected[p.to_text()] += 1;
            f = f * p;
        }
        auto fs = factor(f);
        EXPECT_EQ(as_multiset(fs), expected) << f.to_text();
        EXPECT_EQ(expand(fs), primitive_normalize(f));
        for (const auto& [p, k] : fs) EXPECT_TRUE(is_irreducible(p));
    }
}

TEST(Factor, HighMultiplicity) {
    IntPolynomial a{-3, 2}, b{1, 1, 1};
    auto fs = factor(a.pow(4) * b.pow(3));
    EXPECT_EQ(as_multiset(fs), (Multiset{{"-3 2", 4}, {"1 1 1", 3}}));
}
