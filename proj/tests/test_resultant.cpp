#include <random>

#include <gtest/gtest.h>

#include "diophant/resultant.hpp"

using namespace diophant;

TEST(Resultant, Univariate) {
    EXPECT_EQ(resultant(IntPolynomial{-3, 1}, IntPolynomial{-5, 1}), mpz_class(-2));
    EXPECT_EQ(resultant(IntPolynomial{-2, 0, 1}, IntPolynomial{-2, 0, 1}), mpz_class(0));
    // res(x^2 + 1, x^2 - 2) = prod over +-i of (i^2 - 2) = 9
    EXPECT_EQ(resultant(IntPolynomial{1, 0, 1}, IntPolynomial{-2, 0, 1}), mpz_class(9));
}

TEST(Resultant, MultiplicativeAndProductOfRoots) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
        auto lin = [&] { return IntPolynomial{static_cast<long>(rng() % 21) - 10, 1}; };
        IntPolynomial f = lin() * lin(), g = lin(), h = lin() * lin() * lin();
        EXPECT_EQ(resultant(f, g * h), resultant(f, g) * resultant(f, h));
        // monic f: res(f, g) = prod g(roots of f)
    }
    IntPolynomial f = IntPolynomial{-2, 1} * IntPolynomial{5, 1};
    IntPolynomial g{1, 3, 0, 1};
    EXPECT_EQ(resultant(f, g), g.eval(mpz_class(2)) * g.eval(mpz_class(-5)));
}

TEST(Resultant, BivariateElimination) {
    // res_x(x^2 - 2, y - x^2) = (y - 2)^2
    auto f = BivariatePolynomial::in_x(IntPolynomial{-2, 0, 1});
    auto g = BivariatePolynomial::in_y(IntPolynomial{0, 1}) - BivariatePolynomial::in_x(IntPolynomial{0, 0, 1});
    EXPECT_EQ(resultant(f, g, Eliminate::x).to_text(), "4 -4 1");
    // eliminating y from the swapped system gives the same polynomial in x
    EXPECT_EQ(resultant(f.swapped(), g.swapped(), Eliminate::y).to_text(), "4 -4 1");
}

TEST(Resultant, SumOfRootsMinpoly) {
    // res_x(x^2 - 2, (y - x)^2 - 3) vanishes at sqrt2 + sqrt3: y^4 - 10 y^2 + 1
    auto f = BivariatePolynomial::in_x(IntPolynomial{-2, 0, 1});
    std::vector<IntPolynomial> c{IntPolynomial{-3, 0, 1}, IntPolynomial{0, -2}, IntPolynomial{1}};
    BivariatePolynomial g(c);
    EXPECT_EQ(resultant(f, g, Eliminate::x).to_text(), "1 0 -10 0 1");
}
