#pragma once

#include <stdexcept>
#include <string>

namespace ghs {

// Base for every recoverable failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

// The integrand handed to the antiderivative was not mean-free. Inside the
// solver this means a(t) was computed inconsistently.
class NonZeroMean : public Error {
public:
    using Error::Error;
};

class NumericalBreakdown : public Error {
public:
    using Error::Error;
};

class InterpolationOutOfSync : public Error {
public:
    using Error::Error;
};

class SignConditionViolated : public Error {
public:
    using Error::Error;
};

class InsufficientAsymptotics : public Error {
public:
    using Error::Error;
};

// Closed-form Riccati solution evaluated at or past its blow-up time.
class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace ghs
