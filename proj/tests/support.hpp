#pragma once

#include <string>

#include <gtest/gtest.h>

#include "diophant/ball.hpp"

namespace diophant::testing {

// |b - x| <= rad(b) + 10^-digits, with x given as a truncated decimal reference.
inline ::testing::AssertionResult matches(const RealBall& b, const std::string& decimal, int digits) {
    mpq_class x = parse_decimal(decimal);
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class tol = b.rad().to_mpq() + mpq_class(1, ten);
    mpq_class err = b.mid().to_mpq() - x;
    if (abs(err) <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << b.to_string(40) << " does not match " << decimal;
}

// rad(b) < 10^-digits
inline bool narrower_than(const RealBall& b, int digits) {
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    return b.rad().to_mpq() * ten < 1;
}

} // namespace diophant::testing
