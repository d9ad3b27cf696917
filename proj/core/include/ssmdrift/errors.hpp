#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssmdrift
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A state came within the guard radius of one of the primaries.
class SingularityError : public Error
{
public:
    using Error::Error;
};

/// The linearization at an equilibrium does not have the expected spectrum.
class EigenstructureError : public Error
{
public:
    using Error::Error;
};

/// The adaptive integrator asked for a step below h_min.
class StepUnderflowError : public Error
{
public:
    using Error::Error;
};

/// No section crossing was found before the search horizon.
class NoCrossingError : public Error
{
public:
    using Error::Error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error
{
public:
    ParseError(const std::string &what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input parsed but violates a data invariant (non-equispaced samples, ...).
class InvariantError : public Error
{
public:
    using Error::Error;
};

/// Fitting failed: not enough tori, degree too high, duplicate nodes.
class FitError : public Error
{
public:
    using Error::Error;
};

/// Argument outside the domain of an operation.
class RangeError : public Error
{
public:
    using Error::Error;
};

/// Fixed-point or root iteration did not converge.
class ConvergenceError : public Error
{
public:
    using Error::Error;
};

/// First-order KAM coefficients hit a small divisor.
class ResonanceError : public Error
{
public:
    ResonanceError(const std::string &what, int harmonic) : Error(what), harmonic_(harmonic) {}

    int harmonic() const noexcept { return harmonic_; }

private:
    int harmonic_;
};

/// Stage of the transition map composition where the orbit left the domain.
enum class TransitionStage
{
    FirstInner,
    Scattering,
    SecondInner,
};

class DomainExitError : public Error
{
public:
    DomainExitError(const std::string &what, TransitionStage stage) : Error(what), stage_(stage) {}

    TransitionStage stage() const noexcept { return stage_; }

private:
    TransitionStage stage_;
};

/// Target cell cannot be reached in the cell graph.
class UnreachableError : public Error
{
public:
    using Error::Error;
};

/// The informed orbit search keeps revisiting the same (cell, map) pair.
class LivelockError : public Error
{
public:
    using Error::Error;
};

} // namespace ssmdrift
