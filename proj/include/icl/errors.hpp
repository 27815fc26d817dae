// Error types shared across the library. Every failure the public API can
// signal is a subclass of icl::Error; the CLI maps InputError to exit code 2.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace icl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid user input: malformed files, non-stochastic matrices, bad specs.
class InputError : public Error {
public:
    using Error::Error;
};

class NonSquareError : public InputError {
public:
    using InputError::InputError;
};

class NegativeEntryError : public InputError {
public:
    using InputError::InputError;
};

class ColumnSumError : public InputError {
public:
    ColumnSumError(int column1, double sum)
        : InputError("column " + std::to_string(column1) + " sums to " +
                     std::to_string(sum) + ", expected 1"),
          column(column1), sum(sum) {}
    int column;  // 1-based
    double sum;
};

class NonUniqueStationaryError : public InputError {
public:
    using InputError::InputError;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public InputError {
public:
    using InputError::InputError;
};

class UnknownVariableError : public InputError {
public:
    using InputError::InputError;
};

class OverlappingVariablesError : public InputError {
public:
    using InputError::InputError;
};

class MissingVariableError : public InputError {
public:
    using InputError::InputError;
};

class OutOfRangeError : public InputError {
public:
    using InputError::InputError;
};

class NotDeterministicError : public Error {
public:
    NotDeterministicError(int state1, std::vector<double> column, std::string what)
        : Error(std::move(what)), state(state1), column(std::move(column)) {}
    int state;  // 1-based offending conditioning state
    std::vector<double> column;
};

class StateSpaceMismatchError : public InputError {
public:
    using InputError::InputError;
};

class InfeasibleStructureError : public InputError {
public:
    using InputError::InputError;
};

class ReducibleAfterRetriesError : public Error {
public:
    explicit ReducibleAfterRetriesError(int retries)
        : Error("chain still reducible after " + std::to_string(retries) + " fill retries"),
          retries(retries) {}
    int retries;
};

// Internal guard: a built universe failed its own closure check.
class ClosureVerificationError : public Error {
public:
    using Error::Error;
};

class MapRecoveryError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class AssumptionViolatedError : public Error {
public:
    AssumptionViolatedError(std::string assumption, std::string what)
        : Error(std::move(what)), assumption(std::move(assumption)) {}
    std::string assumption;
};

class TooShortError : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace icl
