#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mafr {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation point outside the basis interval.
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested derivative order exceeds the smoothness of the basis.
class UnsupportedDerivativeError : public Error {
public:
    using Error::Error;
};

// Basis does not admit the requested operation (e.g. diagonal orthonormalization).
class UnsupportedBasisError : public Error {
public:
    using Error::Error;
};

// Integrand produced a non-finite value; message carries the node location.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& msg, double node) : Error(msg), node_(node) {}
    double node() const noexcept { return node_; }

private:
    double node_;
};

// Least-squares fit could not be completed (rank deficiency, singular system).
class FittingError : public Error {
public:
    using Error::Error;
};

// Invalid argument value (nonpositive period, bad weights, out-of-range count, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Too few curves for the requested decomposition.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Numerically singular or degenerate matrix where a positive (semi)definite one is required.
class ConditioningError : public Error {
public:
    using Error::Error;
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0) : Error(msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace mafr
