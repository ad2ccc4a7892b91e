#pragma once

#include <stdexcept>
#include <string>

namespace nsa {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed scalar, point, vector or digit text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input is well-formed but outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by exact zero") {}
};

class MixedRadicand : public DomainError {
public:
    MixedRadicand(long d1, long d2)
        : DomainError("mixed radicands sqrt(" + std::to_string(d1) + ") and sqrt(" +
                      std::to_string(d2) + ") in one computation") {}
};

class NotRational : public DomainError {
public:
    using DomainError::DomainError;
};

class BoundaryPoint : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidDigit : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateImage : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateDenominator : public DomainError {
public:
    using DomainError::DomainError;
};

class KOutOfRange : public DomainError {
public:
    KOutOfRange(std::size_t k, std::size_t cap)
        : DomainError("k = " + std::to_string(k) + " exceeds cap " + std::to_string(cap)) {}
};

/// An identity that must hold by construction did not.
class InvariantFailure : public Error {
public:
    using Error::Error;
};

} // namespace nsa
