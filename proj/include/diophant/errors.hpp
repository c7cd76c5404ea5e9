#pragma once

#include <stdexcept>
#include <string>

namespace diophant {

// Every failure raised by the library derives from Error so callers can map
// whole families onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct BranchCutError : DomainError {
    using DomainError::DomainError;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct ZeroPolynomial : DomainError {
    ZeroPolynomial() : DomainError("operation requires a nonzero polynomial") {}
};

struct ParseError : Error {
    using Error::Error;
};

struct NoRootInHint : Error {
    using Error::Error;
};

struct AmbiguousHint : Error {
    using Error::Error;
};

struct InconsistentHint : Error {
    using Error::Error;
};

struct ZeroToNegativePower : DomainError {
    ZeroToNegativePower() : DomainError("zero raised to a negative power") {}
};

struct AllZeroCoefficients : DomainError {
    AllZeroCoefficients() : DomainError("linear form has only zero coefficients") {}
};

struct NotUnitModulus : DomainError {
    NotUnitModulus() : DomainError("algebraic number is not on the unit circle") {}
};

struct RootOfUnity : DomainError {
    explicit RootOfUnity(long order)
        : DomainError("algebraic number is a root of unity of order " + std::to_string(order)),
          order(order) {}
    long order;
};

struct NoSuchSolution : Error {
    using Error::Error;
};

} // namespace diophant
