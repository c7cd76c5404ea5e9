#include <random>

#include <gtest/gtest.h>

#include "diophant/elementary.hpp"
#include "support.hpp"

using namespace diophant;
using diophant::testing::matches;
using diophant::testing::narrower_than;

namespace {

const char* kPi = "3.14159265358979323846264338327950288419716939937510582097494";
const char* kLn2 = "0.69314718055994530941723212145817656807550013436025525412068";

} // namespace

TEST(Dyadic, DecimalRoundTrip) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Dyadic d(mpz_class(static_cast<long>(rng() >> 20)) - mpz_class(1L << 42), static_cast<int64_t>(rng() % 200) - 100);
        EXPECT_EQ(Dyadic::from_decimal(d.to_decimal()), d);
    }
}

TEST(Dyadic, ParseDecimal) {
    EXPECT_EQ(parse_decimal("0.25"), mpq_class(1, 4));
    EXPECT_EQ(parse_decimal("-0408"), mpq_class(-408));
    EXPECT_EQ(parse_decimal("+1.5e2"), mpq_class(150));
    EXPECT_EQ(parse_decimal("2E-1"), mpq_class(1, 5));
    EXPECT_THROW(parse_decimal("1.2.3"), ParseError);
    EXPECT_THROW(parse_decimal(""), ParseError);
    EXPECT_THROW(Dyadic::from_decimal("0.1"), ParseError);
}

TEST(Dyadic, RoundingDirections) {
    Dyadic x(mpz_class(0b101101), 0);
    EXPECT_EQ(x.rounded(3, Round::down), Dyadic(40));
    EXPECT_EQ(x.rounded(3, Round::up), Dyadic(48));
    EXPECT_EQ((-x).rounded(3, Round::down), Dyadic(-48));
    EXPECT_EQ(x.floor(), mpz_class(45));
    EXPECT_EQ(Dyadic(mpz_class(-3), -1).floor(), mpz_class(-2));
    EXPECT_EQ(Dyadic(mpz_class(-3), -1).ceil(), mpz_class(-1));
}

TEST(RealBall, ArithmeticEnclosesExactRationals) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int i = 0; i < 300; ++i) {
        long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        if (b == 0 || e == 0) continue;
        mpq_class x(a, b), y(c, e);
        x.canonicalize();
        y.canonicalize();
        RealBall X = RealBall::from_mpq(x, 80), Y = RealBall::from_mpq(y, 80);
        EXPECT_TRUE((X + Y).contains(mpq_class(x + y)));
        EXPECT_TRUE((X - Y).contains(mpq_class(x - y)));
        EXPECT_TRUE((X * Y).contains(mpq_class(x * y)));
        if (y != 0) {
            EXPECT_TRUE((X / Y).contains(mpq_class(x / y)));
        }
        EXPECT_TRUE(sqr(X).contains(mpq_class(x * x)));
    }
}

TEST(RealBall, DivisionByBallContainingZeroThrows) {
    RealBall z(Dyadic(0), Dyadic(mpz_class(1), -10), 64);
    EXPECT_THROW(RealBall(1) / z, DomainError);
}

TEST(RealBall, PredicatesAndFloor) {
    RealBall b = RealBall::from_endpoints(Dyadic(mpz_class(5), -2), Dyadic(mpz_class(7), -2), 64);
    EXPECT_TRUE(b.is_positive());
    EXPECT_EQ(b.certain_floor(), mpz_class(1));
    RealBall c = RealBall::from_endpoints(Dyadic(mpz_class(3), -2), Dyadic(mpz_class(5), -2), 64);
    EXPECT_FALSE(c.certain_floor().has_value());
    EXPECT_TRUE(overlaps(b, c));
    EXPECT_FALSE(overlaps(b, RealBall(3)));
}

TEST(Constants, PiAndLn2) {
    for (long prec : {64L, 200L, 1000L}) {
        RealBall pi = const_pi(prec), ln2 = const_ln2(prec);
        EXPECT_TRUE(matches(pi, kPi, std::min<long>(55, prec * 3 / 10 - 3)));
        EXPECT_TRUE(matches(ln2, kLn2, std::min<long>(55, prec * 3 / 10 - 3)));
        EXPECT_TRUE(narrower_than(pi, static_cast<int>(prec * 3 / 10 - 3)));
    }
}

TEST(Elementary, ReferenceValues) {
    const long p = 256;
    EXPECT_TRUE(matches(atan(RealBall::from_mpq(mpq_class(1, 3), p)),
                        "0.321750554396642193401404614358661319020755295557656191432803", 55));
    EXPECT_TRUE(matches(exp(RealBall(1).with_precision(p)),
                        "2.71828182845904523536028747135266249775724709369995957496697", 55));
    EXPECT_TRUE(matches(sqrt(RealBall(2).with_precision(p)),
                        "1.41421356237309504880168872420969807856967187537694807317668", 55));
    EXPECT_TRUE(matches(log(RealBall(10).with_precision(p)),
                        "2.30258509299404568401799145468436420760110148862877297603333", 55));
}

TEST(Elementary, Identities) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(1, 100000);
    const long p = 192;
    for (int i = 0; i < 40; ++i) {
        mpq_class x(d(rng), d(rng));
        x.canonicalize();
        RealBall X = RealBall::from_mpq(x, p);
        EXPECT_TRUE(overlaps(exp(log(X)), X));
        EXPECT_TRUE(overlaps(sqr(sqrt(X)), X));
        // atan x + atan 1/x = pi/2
        RealBall s = atan(X) + atan(RealBall(1).with_precision(p) / X);
        EXPECT_TRUE(overlaps(s, const_pi(p).mul_2exp(-1)));
        EXPECT_TRUE(narrower_than(s, 45));
    }
}

TEST(Elementary, DomainErrors) {
    EXPECT_THROW(log(RealBall(-1).with_precision(64)), DomainError);
    EXPECT_THROW(sqrt(RealBall(-1).with_precision(64)), DomainError);
}

TEST(Complex, ArgAndLog) {
    const long p = 128;
    ComplexBall minus_one{RealBall(-1).with_precision(p), RealBall(0).with_precision(p)};
    ComplexBall lg = complex_log(minus_one);
    EXPECT_TRUE(lg.re.contains(Dyadic(0)));
    EXPECT_TRUE(overlaps(lg.im, const_pi(p)));
    ComplexBall i{RealBall(0).with_precision(p), RealBall(1).with_precision(p)};
    EXPECT_TRUE(overlaps(arg(i), const_pi(p).mul_2exp(-1)));
    ComplexBall z{RealBall(3).with_precision(p), RealBall(4).with_precision(p)};
    EXPECT_TRUE(overlaps(complex_log(z).re, log(RealBall(5).with_precision(p))));
}

TEST(Precision, MaxIsEnforced) {
    EXPECT_THROW(require_precision(max_precision() * 2), PrecisionExhausted);
    EXPECT_NO_THROW(require_precision(kDefaultPrecision));
}
