#pragma once

#include <stdexcept>
#include <string>

namespace lagtorus {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// tau = v + i w vanished (or came within the regularity threshold).
class RegularityViolation : public Error {
public:
    using Error::Error;
};

/// Two independent evaluations of the same quantity disagreed.
class CrossCheckMismatch : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The curve is parametrised clockwise where counterclockwise is required.
class OrientationError : public Error {
public:
    using Error::Error;
};

/// A derivative-free polish did not converge within its evaluation budget.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// ODE step control could not keep the state inside its admissible band.
class IntegrationFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A mathematical invariant that must hold failed numerically.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace lagtorus
