#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lambert {

/// Typed error conditions raised by preconditions and guards.
enum class ErrorCode {
    ZeroVector,
    DegenerateAngle,
    InvalidProblem,
    OutOfGuardRange,
    DivergentSeries,
    NoConvergence,
    NotBracketed,
    NonPhysicalY,
    NegativeRadicand,
    InvalidElements,
    GSingularity,
    BadNormal,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class LambertError : public std::runtime_error {
public:
    LambertError(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lambert
