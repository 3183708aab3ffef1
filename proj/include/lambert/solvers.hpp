// End-to-end solver pipelines: formulation + starter + iteration scheme + velocity method.
#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "lambert/geometry.hpp"
#include "lambert/rootfind.hpp"
#include "lambert/vec3.hpp"

namespace lambert {

enum class SolverId {
    LagrangeNR,
    GaussSS,
    BateNR,
    BateNRBracketed,
    BateBisection,
    SimoBisection,
    BattinSS,
    GoodingHalley,
    IzzoHouseholder,
    IzzoRegulaFalsi,
};

inline constexpr std::array<SolverId, 10> kAllSolvers{
    SolverId::LagrangeNR,    SolverId::GaussSS,      SolverId::BateNR,        SolverId::BateNRBracketed,
    SolverId::BateBisection, SolverId::SimoBisection, SolverId::BattinSS,     SolverId::GoodingHalley,
    SolverId::IzzoHouseholder, SolverId::IzzoRegulaFalsi,
};

std::string_view to_string(SolverId id) noexcept;
std::optional<SolverId> parse_solver_id(std::string_view name) noexcept;

/// Velocity reconstruction bound to each pipeline.
enum class VelocityMethod { Elements, LagrangeFg, RadialTransversal };
VelocityMethod velocity_method(SolverId id) noexcept;

enum class FailureReason {
    None,
    NonReal,
    NotBracketed,
    DivergentSeries,
    NonPhysicalY,
    GSingularity,
    MaxIterations,
    AsymptoteJump,
    ZeroDenominator,
};

std::string_view to_string(FailureReason reason) noexcept;

enum class OutcomeStatus { Converged, Failed };
std::string_view to_string(OutcomeStatus status) noexcept;

struct SolverOutcome {
    Vec3 v1{};  ///< dimensional
    Vec3 v2{};
    OutcomeStatus status{OutcomeStatus::Failed};
    FailureReason reason{FailureReason::None};
    int iterations{0};
    double time_residual{0.0};  ///< |t - TOF| in normalized time, NaN if no time was evaluated
    IterationTrace trace;

    bool converged() const noexcept { return status == OutcomeStatus::Converged; }
};

/// Runs one pipeline. Never throws for a valid problem; failures are reported in the outcome.
SolverOutcome solve(SolverId id, const LambertProblem &problem, const ToleranceSpec &tol = {});

std::vector<std::pair<SolverId, SolverOutcome>> solve_all(const LambertProblem &problem,
                                                           const ToleranceSpec &tol = {});

/// Starters exposed for testing (Lancaster x, normalized geometry).
double izzo_starter(const TransferGeometry &g);
double gooding_starter(const TransferGeometry &g);

/// Constant single-revolution regula falsi starters in x (log(1 + x) plane), as used by PyKEP.
inline constexpr double kIzzoRegulaFalsiX1 = -0.5233;
inline constexpr double kIzzoRegulaFalsiX2 = 0.5233;

/// Preliminary bisection halvings performed by BateNRBracketed before its Newton phase.
inline constexpr int kBatePreliminaryHalvings = 16;

}  // namespace lambert
