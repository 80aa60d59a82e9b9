#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ostro {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A sequence cannot be materialized deep enough for the requested operation.
class InsufficientDepthError : public Error {
public:
    using Error::Error;
};

/// Exact materialization would exceed the configured exact-depth bound.
class DepthOverflowError : public Error {
public:
    using Error::Error;
};

/// The defining growth condition q_{k+1} >= q_k(q_k+1) fails.
class InvalidSequenceError : public Error {
public:
    InvalidSequenceError(const std::string& what, std::size_t index)
        : Error(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_ = 0;
};

/// Input outside the operation's domain (e.g. expand() of x outside (0,1]).
class NotInRangeError : public Error {
public:
    using Error::Error;
};

/// A comparison could not be certified within the refinement budget.
/// When `certified_outside` is set, the point provably lies in a gap between
/// cylinders and the separating rank is meaningful.
class UndecidableError : public Error {
public:
    UndecidableError(const std::string& what, std::size_t rank, bool certified_outside)
        : Error(what), rank_(rank), outside_(certified_outside) {}
    std::size_t separating_rank() const { return rank_; }
    bool certified_outside() const { return outside_; }

private:
    std::size_t rank_ = 0;
    bool outside_ = false;
};

/// An enumeration budget (e.g. 2^rank cylinders) was exceeded.
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

/// The requested tolerance is unreachable within depth/precision limits.
class PrecisionBudgetError : public Error {
public:
    using Error::Error;
};

/// Kernel carries no nondegenerate digit up to the inspected depth.
class DegenerateKernelError : public Error {
public:
    using Error::Error;
};

/// An infinite convolution family lacks the summability certificate.
class SummabilityViolatedError : public Error {
public:
    using Error::Error;
};

}  // namespace ostro
