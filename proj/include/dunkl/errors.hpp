#ifndef DUNKL_ERRORS_HPP
#define DUNKL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dunkl {

/// Base class for every error thrown by the engine.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A model parameter tuple violates the admissibility conditions
/// nu^+ + 1/2 > 0 or nu^- + 3/2 > 0 of the axis it belongs to.
struct ConditionViolation : Error {
    explicit ConditionViolation(const std::string& msg) : Error(msg) {}
};

/// Two series with different (mu, omega) profiles were combined.
struct ProfileMismatch : Error {
    explicit ProfileMismatch(const std::string& msg) : Error(msg) {}
};

/// A requested moment integral diverges; carries the offending exponents.
struct DivergentMoment : Error {
    DivergentMoment(const std::string& msg, long p_, long q_ = 0)
        : Error(msg), p(p_), q(q_) {}
    long p;
    long q;
};

/// Evaluation of a series with negative exponents at a zero coordinate.
struct SingularEvaluation : Error {
    explicit SingularEvaluation(const std::string& msg) : Error(msg) {}
};

struct ZeroSeriesError : Error {
    explicit ZeroSeriesError(const std::string& msg) : Error(msg) {}
};

/// Quantum-number parity inconsistent with the requested sector.
struct ParityError : Error {
    explicit ParityError(const std::string& msg) : Error(msg) {}
};

/// No eigenstate exists at the requested energy/sector.
struct EmptyLevelError : Error {
    explicit EmptyLevelError(const std::string& msg) : Error(msg) {}
};

/// An exact Gaussian-scale power cannot be represented (omega not a
/// power of two and the exponent not an integer).
struct UnsupportedScale : Error {
    explicit UnsupportedScale(const std::string& msg) : Error(msg) {}
};

struct BracketExhausted : Error {
    explicit BracketExhausted(const std::string& msg) : Error(msg) {}
};

struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

/// An exact linear system turned out inconsistent or a Gram matrix
/// failed to be positive definite.
struct LinearAlgebraError : Error {
    explicit LinearAlgebraError(const std::string& msg) : Error(msg) {}
};

/// The exact K2 matrix on a degenerate level has an entry off the three
/// central diagonals.  This cannot happen for admissible parameters; it is
/// a hard failure, not a tolerance issue.
struct TridiagonalityViolation : Error {
    explicit TridiagonalityViolation(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace dunkl

#endif
