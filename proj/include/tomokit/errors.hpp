#pragma once

#include <stdexcept>
#include <string>

namespace tomokit {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument to an operation (dimension mismatch, degenerate query, ...).
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

// A state object violates its invariants (e.g. odd cat with all alphas zero).
class InvalidStateError : public Error {
public:
    explicit InvalidStateError(const std::string& msg) : Error(msg) {}
};

// A grid is too narrow to hold the requested state.
class GridCoverageError : public Error {
public:
    explicit GridCoverageError(const std::string& msg) : Error(msg) {}
};

// A kernel evaluation hit a singular configuration (zero denominator,
// singular linear system inside the delta constraints).
class SingularKernelError : public Error {
public:
    explicit SingularKernelError(const std::string& msg) : Error(msg) {}
};

// A quadrature failed to reach its accuracy target (oscillatory tails,
// regulator non-convergence, divergent integrand).
class AccuracyError : public Error {
public:
    explicit AccuracyError(const std::string& msg) : Error(msg) {}
};

class NotImplementedError : public Error {
public:
    explicit NotImplementedError(const std::string& msg) : Error(msg) {}
};

} // namespace tomokit
