// Result of evaluating a transfer-time equation at one value of its free parameter.
#pragma once

#include <cmath>
#include <limits>
#include <string_view>

namespace lambert {

enum class DomainFlag {
    InDomain,
    BelowLowerLimit,  ///< at or below the t = 0 wall (or the numerical guard)
    BeyondAsymptote,  ///< at or past the first infinite-time asymptote
    NonReal,          ///< square-root argument negative or series outside its disc
};

std::string_view to_string(DomainFlag flag) noexcept;

/** @brief Normalized transfer time t(w) and the derivatives the formulation provides. */
struct TofEvaluation {
    static constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

    double t{kAbsent};
    double dt{kAbsent};
    double d2t{kAbsent};
    double d3t{kAbsent};
    int order{0};  ///< number of derivatives present
    DomainFlag flag{DomainFlag::InDomain};
    bool truncated{false};  ///< a series hit its term cap; t is approximate

    bool in_domain() const noexcept { return flag == DomainFlag::InDomain; }

    static TofEvaluation outside(DomainFlag f) noexcept {
        TofEvaluation e;
        e.flag = f;
        return e;
    }
};

}  // namespace lambert
