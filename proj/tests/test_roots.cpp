#include <random>

#include <gtest/gtest.h>

#include "diophant/roots.hpp"
#include "support.hpp"

using namespace diophant;

namespace {

bool disjoint(const ComplexBall& a, const ComplexBall& b) { return !overlaps(a.re, b.re) || !overlaps(a.im, b.im); }

} // namespace

TEST(RealRoots, SqrtFive) {
    auto rs = real_roots(IntPolynomial{-5, 0, 1});
    ASSERT_EQ(rs.size(), 2u);
    auto r = rs[1].refined(200);
    EXPECT_TRUE(diophant::testing::matches(r.ball(256), "2.23606797749978969640917366873127623544061835961152572427089", 55));
    EXPECT_TRUE(rs[0].hi <= rs[1].lo);
}

TEST(RealRoots, MultiplicitiesAndExactRoots) {
    IntPolynomial f = IntPolynomial{-1, 1}.pow(2) * IntPolynomial{1, 2} * IntPolynomial{1, 0, 1};
    auto rs = real_roots(f);
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_TRUE(rs[0].ball().contains(mpq_class(-1, 2)));
    EXPECT_EQ(rs[0].multiplicity, 1);
    EXPECT_TRUE(rs[1].ball().contains(mpq_class(1)));
    EXPECT_EQ(rs[1].multiplicity, 2);
    EXPECT_TRUE(real_roots(IntPolynomial{1, 0, 1}).empty());
}

TEST(RealRoots, SturmCountMatchesIsolation) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        std::vector<mpz_class> c(static_cast<size_t>(2 + rng() % 7));
        for (auto& x : c) x = static_cast<long>(rng() % 41) - 20;
        if (sgn(c.back()) == 0) c.back() = 1;
        IntPolynomial f(c);
        auto rs = real_roots(f);
        Dyadic big = detail::root_bound_pow2(squarefree_part(f));
        EXPECT_EQ(sturm_count(f, -big, big), static_cast<int>(rs.size())) << f.to_text();
        for (const auto& r : rs) {
            auto t = r.refined(60);
            if (t.is_exact())
                EXPECT_EQ(r.poly.sign_at(t.lo), 0);
            else
                EXPECT_NE(r.poly.sign_at(t.lo), r.poly.sign_at(t.hi));
        }
    }
}

TEST(ComplexRoots, CountsAndConjugation) {
    for (const char* s : {"1 0 1", "-5 0 1", "3 0 4 0 3", "-1 -1 0 0 0 1", "1 1 1 1 1 1 1"}) {
        IntPolynomial f = IntPolynomial::parse(s);
        auto rs = complex_roots(f, 128);
        ASSERT_EQ(static_cast<int>(rs.size()), f.degree()) << s;
        int real = 0;
        for (size_t i = 0; i < rs.size(); ++i) {
            EXPECT_TRUE(f.eval(rs[i].region).contains(ComplexBall{RealBall(0), RealBall(0)})) << s;
            if (rs[i].is_real()) ++real;
            for (size_t j = i + 1; j < rs.size(); ++j) EXPECT_TRUE(disjoint(rs[i].region, rs[j].region));
            bool has_conj = false;
            for (const auto& o : rs) has_conj = has_conj || (overlaps(o.region.re, rs[i].region.re) && overlaps(o.region.im, -rs[i].region.im));
            EXPECT_TRUE(has_conj);
        }
        EXPECT_EQ(real, static_cast<int>(real_roots(f).size())) << s;
    }
}

TEST(ComplexRoots, UnitCircleRootsOfBetaPolynomial) {
    auto rs = complex_roots(IntPolynomial{3, 0, 4, 0, 3}, 256);
    for (const auto& r : rs) {
        RealBall n = r.region.norm();
        EXPECT_TRUE(n.contains(Dyadic(1)));
        EXPECT_TRUE(diophant::testing::narrower_than(n, 60));
    }
}

TEST(ComplexRoots, HighDegree) {
    IntPolynomial f = IntPolynomial::monomial(1, 30) - IntPolynomial{1, 1};
    auto rs = complex_roots(f, 128);
    EXPECT_EQ(rs.size(), 30u);
}
