#include <gtest/gtest.h>

#include "diophant/ratapprox.hpp"

using namespace diophant;

namespace {

RealBall golden_conjugate(long prec) {
    // (sqrt 5 - 1) / 2 = [0; 1, 1, 1, ...]
    const long wp = prec + 8;
    return ((sqrt(RealBall(5).with_precision(wp)) - RealBall(1)).mul_2exp(-1)).with_precision(prec);
}

// Nearest integer to q theta by exact comparison against a narrow enclosure.
mpz_class brute_nearest(const RealBall& theta, long q) {
    RealBall x = RealBall(q) * theta;
    mpz_class f = x.mid().floor();
    RealBall frac = x - RealBall::exact(f);
    return frac.upper() < Dyadic(mpz_class(1), -1) ? f : mpz_class(f + 1);
}

// 1 - phi' = [0; 2, 1, 1, ...] lies in (-1/2, 1/2]
RealBall golden_complement(long prec) { return RealBall(1).with_precision(prec) - golden_conjugate(prec); }

BoundCertificate simple_certificate(const mpq_class& c, long tau) {
    BoundCertificate cert;
    cert.tau = RealBall(tau).with_precision(128);
    cert.log_c = log(RealBall::from_mpq(c, 128));
    return cert;
}

} // namespace

TEST(ContinuedFraction, GoldenRatioQuotientsAreOnes) {
    auto cf = cf_expand(ThetaProvider(golden_conjugate), 51);
    ASSERT_GE(cf.certified_terms, 51u);
    EXPECT_EQ(cf.quotients[0], 0);
    for (size_t k = 1; k < cf.quotients.size(); ++k) EXPECT_EQ(cf.quotients[k], 1) << k;
    // convergents are ratios of Fibonacci numbers
    EXPECT_EQ(cf.convergents[10].p, 55);
    EXPECT_EQ(cf.convergents[10].q, 89);
}

TEST(ContinuedFraction, ConvergentBoundAndAlternation) {
    auto cf = cf_expand(ThetaProvider(golden_conjugate), 60);
    const RealBall theta = golden_conjugate(512);
    for (size_t k = 0; k + 1 < cf.convergents.size(); ++k) {
        const auto& c = cf.convergents[k];
        const auto& n = cf.convergents[k + 1];
        RealBall diff = abs(theta - RealBall::from_mpq(mpq_class(c.p, c.q), 512));
        RealBall bound = RealBall(1).with_precision(512) / RealBall::exact(c.q * n.q, 512);
        EXPECT_TRUE(diff.upper() < bound.lower()) << k;
        // p_{k+1} q_k - p_k q_{k+1} = (-1)^k
        EXPECT_EQ(n.p * c.q - c.p * n.q, k % 2 == 0 ? 1 : -1);
    }
}

TEST(ContinuedFraction, InvariantUnderPrecisionDoubling) {
    ThetaProvider pi4 = [](long prec) { return const_pi(prec).mul_2exp(-2); };
    auto a = cf_expand(pi4, 200, 256);
    auto b = cf_expand(pi4, 200, 512);
    size_t common = std::min(a.certified_terms, b.certified_terms);
    ASSERT_GT(common, 50u);
    for (size_t k = 0; k < common; ++k) EXPECT_EQ(a.quotients[k], b.quotients[k]);
    EXPECT_GE(b.certified_terms, a.certified_terms);
    // pi = [3; 7, 15, 1, 292, ...]
    auto p = cf_expand(ThetaProvider([](long prec) { return const_pi(prec); }), 5);
    std::vector<mpz_class> ref{3, 7, 15, 1, 292};
    EXPECT_EQ(p.quotients, ref);
}

TEST(ContinuedFraction, Rationals) {
    auto cf = cf_expand(mpq_class(415, 93), 20);
    EXPECT_TRUE(cf.complete);
    std::vector<mpz_class> ref{4, 2, 6, 7};
    EXPECT_EQ(cf.quotients, ref);
    EXPECT_EQ(cf.convergents.back().p, 415);
    EXPECT_EQ(cf.convergents.back().q, 93);
    auto half = cf_expand(mpq_class(1, 2), 10);
    EXPECT_EQ(half.quotients, (std::vector<mpz_class>{0, 2}));
}

TEST(ContinuedFraction, WideBallCertifiesFewTerms) {
    RealBall wide = RealBall::from_endpoints(Dyadic(mpz_class(1), -2), Dyadic(mpz_class(5), -4), 64);
    auto cf = cf_expand(wide, 10);
    EXPECT_EQ(cf.certified_terms, 1u);
    RealBall across = RealBall::from_endpoints(Dyadic(mpz_class(-1), -4), Dyadic(mpz_class(1), -4), 64);
    EXPECT_THROW(cf_expand(across, 10), PrecisionExhausted);
}

TEST(EmpiricalMu, GoldenRatioTendsToTwo) {
    auto cf = cf_expand(ThetaProvider(golden_conjugate), 60);
    auto mus = empirical_mu(golden_conjugate(cf.precision), cf);
    ASSERT_GT(mus.size(), 20u);
    for (const auto& m : mus) {
        if (m.k < 10) continue;
        EXPECT_GT(m.mu.lower().to_mpq(), mpq_class(9, 5));
        EXPECT_LT(m.mu.upper().to_mpq(), mpq_class(11, 5));
    }
}

TEST(NearestInteger, MatchesBruteForce) {
    const RealBall theta = golden_conjugate(256);
    detail::FixedTheta ft(theta, 264);
    for (long q = 1; q <= 1000; ++q) {
        auto c = detail::nearest(ft, mpz_class(q));
        ASSERT_EQ(c.status, detail::ScanStatus::ok);
        EXPECT_EQ(c.p, brute_nearest(theta, q)) << q;
    }
}

TEST(Verify, PassesForBadlyApproximableNumber) {
    // |theta - p/q| >= 1/(3 q^2) holds for every q
    auto rep = verify_diophantine(ThetaProvider(golden_complement), simple_certificate(mpq_class(1, 3), 2), 2000);
    EXPECT_TRUE(rep.passed);
    EXPECT_TRUE(rep.side_conditions);
    EXPECT_GE(rep.worst_ratio.lower().sign(), 0);
}

TEST(Verify, FailsWhenExponentTooSmall) {
    auto rep = verify_diophantine(ThetaProvider(golden_complement), simple_certificate(mpq_class(1, 3), 1), 2000);
    EXPECT_FALSE(rep.passed);
}

TEST(Verify, RationalThetaIsCaught) {
    ThetaProvider exact = [](long prec) { return RealBall::from_mpq(mpq_class(3, 8), prec); };
    auto rep = verify_diophantine(exact, simple_certificate(mpq_class(1, 100), 3), 50);
    EXPECT_FALSE(rep.passed);
    ASSERT_TRUE(rep.failure_q.has_value());
    EXPECT_EQ(*rep.failure_q, 8);
    // a non-dyadic rational is never separated from p/q by any enclosure
    ThetaProvider two_sevenths = [](long prec) { return RealBall::from_mpq(mpq_class(2, 7), prec); };
    EXPECT_THROW(verify_diophantine(two_sevenths, simple_certificate(mpq_class(1, 100), 3), 50), PrecisionExhausted);
}

TEST(Verify, SideConditionViolation) {
    // theta near 0.9 gives p' = q for small q, breaking 2|p'| < q + 1
    ThetaProvider t = [](long prec) { return sqrt(RealBall(81).with_precision(prec + 8) + RealBall(1).with_precision(prec + 8).mul_2exp(-20)).mul_2exp(-3) - RealBall(Dyadic(mpz_class(1), -4), Dyadic(), prec) * RealBall(4); };
    auto rep = verify_diophantine(t, simple_certificate(mpq_class(1, 1000000), 3), 20);
    EXPECT_FALSE(rep.side_conditions);
}
