#pragma once

#include <stdexcept>
#include <string>

namespace logmatch {

// Failure categories surfaced by every module. The C API maps each kind onto
// a status code, so keep the list in sync with lm_status in logmatch.h.
enum class ErrorKind {
    Usage,            // caller violated a precondition (mismatched variables, bad order, ...)
    Parse,            // malformed decimal or model literal
    Domain,           // non-finite evaluation or argument outside the defined range
    Bracket,          // no sign change across a root bracket
    Rank,             // singular Jacobian in a 2D Newton solve
    NonConvergence,   // iteration cap reached
    Pole,             // evaluation at a pole / vanishing denominator
    Branch,           // square root of a series with non-positive constant term
    Parity,           // odd coefficients where an even series was expected
    Normalization,    // vanishing normalizing constant
    Input,            // insufficient input data (short coefficient sequences, ...)
    NoClosedForm,     // model lacks a closed-form logarithmic derivative
    TaylorBlind,      // model's Taylor data at the origin cannot represent it
    CutoffTooSmall,   // hierarchy cutoff not inside the classically forbidden region
    Stiffness,        // ODE step size underflow
    NoCrossing,       // truncated series do not cross inside the bracket
    SearchFailure,    // singularity search found nothing usable
    TrackingFailure,  // RPM root chains could not be assembled
    Range,            // argument outside a validated evaluation range
    Inconclusive,     // diagnostic estimate impossible
    Io,
    Internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace logmatch
