#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "diophant/gutkin.hpp"
#include "support.hpp"

using namespace diophant;
using diophant::testing::matches;

namespace {

// Sign changes of n sin a cos na - cos a sin na on (0, pi/2); its zeros there
// are exactly the solutions of n tan a = tan na.
int grid_count(int n, int steps = 200000) {
    int count = 0;
    bool prev = false;
    for (int k = 1; k < steps; ++k) {
        double a = k * (M_PI / 2) / steps;
        double g = n * std::sin(a) * std::cos(n * a) - std::cos(a) * std::sin(n * a);
        bool s = g > 0;
        if (k > 1 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// tan((k+1) a) from tan(k a) and t by the addition formula, in exact rationals.
std::pair<mpq_class, mpq_class> tan_fraction(int n, const mpq_class& t) {
    mpq_class num = t, den = 1;
    for (int k = 1; k < n; ++k) {
        mpq_class nn = num + t * den, nd = den - t * num;
        num = nn;
        den = nd;
    }
    return {num, den};
}

} // namespace

TEST(TanMultiple, PythagoreanIdentity) {
    IntPolynomial one_plus_t2{1, 0, 1};
    for (int n = 2; n <= 64; ++n) {
        auto tp = tan_multiple(n);
        EXPECT_EQ(tp.P * tp.P + tp.Q * tp.Q, one_plus_t2.pow(static_cast<unsigned>(n))) << n;
    }
}

TEST(TanMultiple, AdditionFormulaOracle) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
        mpq_class t(static_cast<long>(rng() % 201) - 100, 1 + static_cast<long>(rng() % 50));
        t.canonicalize();
        for (int n = 1; n <= 12; ++n) {
            auto tp = tan_multiple(n);
            auto [num, den] = tan_fraction(n, t);
            EXPECT_EQ(tp.P.eval(t) * den, tp.Q.eval(t) * num) << n;
        }
    }
}

TEST(Witness, SmallCases) {
    EXPECT_EQ(witness(2).to_text(), "0 0 0 2");
    EXPECT_EQ(witness(3).to_text(), "0 0 0 8");
    EXPECT_EQ(witness(4).to_text(), "0 0 0 20 0 -4");
    EXPECT_THROW(witness(1), DomainError);
}

TEST(Solve, CountsMatchNumericOracle) {
    for (int n = 2; n <= 12; ++n) {
        auto res = solve_detailed(n, 128);
        EXPECT_EQ(static_cast<int>(res.solutions.size()), grid_count(n)) << n;
        for (size_t i = 0; i + 1 < res.solutions.size(); ++i)
            EXPECT_TRUE(res.solutions[i].alpha.upper() < res.solutions[i + 1].alpha.lower());
        for (const auto& s : res.solutions) {
            // n tan a = tan n a at the enclosure
            RealBall t = s.t.enclosure(128).re;
            auto tp = tan_multiple(n);
            EXPECT_TRUE((RealBall(n) * t * tp.Q.eval(t) - tp.P.eval(t)).contains(Dyadic(0)));
            EXPECT_TRUE(s.alpha.is_positive());
            EXPECT_TRUE(s.alpha.upper() < const_pi(128).mul_2exp(-1).lower());
            EXPECT_TRUE(is_unit_modulus(s.beta));
        }
    }
}

TEST(Solve, FourAndFive) {
    auto s4 = solve(4, 256);
    ASSERT_EQ(s4.size(), 1u);
    EXPECT_EQ(s4[0].t.minpoly().to_text(), "-5 0 1");
    EXPECT_TRUE(matches(s4[0].alpha, "1.15026199151093149134305917573", 28));
    EXPECT_EQ(s4[0].beta.minpoly().to_text(), "3 0 4 0 3");
    auto s5 = solve(5, 256);
    ASSERT_EQ(s5.size(), 1u);
    EXPECT_EQ(s5[0].t.minpoly().to_text(), "-5 0 3");
    EXPECT_EQ(s5[0].beta.minpoly().to_text(), "2 0 1 0 2");
    EXPECT_TRUE(solve(2).empty());
    EXPECT_TRUE(solve(3).empty());
}

TEST(BetaFromT, SpecialValues) {
    EXPECT_EQ(beta_from_t(AlgebraicNumber::rational(0)).minpoly().to_text(), "-1 1");
    // t = 1: beta = e^{i pi/4}
    auto b = beta_from_t(AlgebraicNumber::rational(1));
    EXPECT_EQ(b.minpoly().to_text(), "1 0 0 0 1");
    EXPECT_EQ(is_root_of_unity(b), std::optional<long>(8));
    RealBall quarter_pi = const_pi(128).mul_2exp(-2);
    EXPECT_TRUE(beta_from_t(AlgebraicNumber::rational(1), quarter_pi) == b);
    EXPECT_THROW(beta_from_t(AlgebraicNumber::rational(1), quarter_pi.mul_2exp(1)), InconsistentHint);
}

TEST(Classify, NEqualsFour) {
    auto rep = classify(4, 0);
    EXPECT_TRUE(rep.unit_modulus);
    EXPECT_FALSE(rep.root_of_unity);
    EXPECT_TRUE(matches(rep.beta_height.h, "0.274653072167027422848811309230631426161872639455687362933674", 55));
    EXPECT_TRUE(overlaps(rep.beta_height.h_mod, rep.solution.alpha));
    EXPECT_TRUE(matches(rep.cert.C0, "739666318241.906669269711102048262431", 20));
    EXPECT_TRUE(rep.verification.passed);
    EXPECT_TRUE(rep.verification.side_conditions);
    std::vector<mpz_class> head{0, 5, 2, 6, 6, 1, 3, 13, 11, 2};
    ASSERT_GE(rep.cf.quotients.size(), head.size());
    EXPECT_TRUE(std::equal(head.begin(), head.end(), rep.cf.quotients.begin()));
    ASSERT_EQ(rep.deductions.size(), 3u);
    for (const auto& d : rep.deductions) EXPECT_EQ(d.status, "cited");
}

TEST(Classify, Errors) {
    EXPECT_THROW(classify(4, 1), NoSuchSolution);
    EXPECT_THROW(classify(2, 0), NoSuchSolution);
    EXPECT_THROW(classify(1, 0), NoSuchSolution);
}
