#include "lambert/error.hpp"
#include "lambert/evaluation.hpp"
#include "lambert/rootfind.hpp"

namespace lambert {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::DegenerateAngle: return "DegenerateAngle";
        case ErrorCode::InvalidProblem: return "InvalidProblem";
        case ErrorCode::OutOfGuardRange: return "OutOfGuardRange";
        case ErrorCode::DivergentSeries: return "DivergentSeries";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotBracketed: return "NotBracketed";
        case ErrorCode::NonPhysicalY: return "NonPhysicalY";
        case ErrorCode::NegativeRadicand: return "NegativeRadicand";
        case ErrorCode::InvalidElements: return "InvalidElements";
        case ErrorCode::GSingularity: return "GSingularity";
        case ErrorCode::BadNormal: return "BadNormal";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

std::string_view to_string(DomainFlag flag) noexcept {
    switch (flag) {
        case DomainFlag::InDomain: return "InDomain";
        case DomainFlag::BelowLowerLimit: return "BelowLowerLimit";
        case DomainFlag::BeyondAsymptote: return "BeyondAsymptote";
        case DomainFlag::NonReal: return "NonReal";
    }
    return "Unknown";
}

std::string_view to_string(TraceStatus status) noexcept {
    switch (status) {
        case TraceStatus::Converged: return "Converged";
        case TraceStatus::MaxIterations: return "MaxIterations";
        case TraceStatus::Diverged: return "Diverged";
        case TraceStatus::NonRealEncountered: return "NonRealEncountered";
        case TraceStatus::NotBracketed: return "NotBracketed";
        case TraceStatus::ZeroDenominator: return "ZeroDenominator";
    }
    return "Unknown";
}

}  // namespace lambert
