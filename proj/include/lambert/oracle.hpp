// Solver-independent ground truth: universal-variable Kepler propagation and a
// bisection-based reference Lambert solution.
#pragma once

#include <utility>

#include "lambert/geometry.hpp"
#include "lambert/vec3.hpp"

namespace lambert {

struct StateVector {
    Vec3 r;
    Vec3 v;
};

/**
 * @brief Propagates a two-body state by dt with the universal Kepler equation.
 *
 * The universal anomaly is found with Laguerre-Conway iterations to a relative residual
 * of 1e-13.
 * @throws LambertError(NoConvergence) after 100 iterations, ZeroVector for r = 0.
 */
StateVector kepler_propagate(const Vec3 &r, const Vec3 &v, double dt, double mu);

struct ValidationReport {
    double position_residual{0.0};  ///< |r(tof) - r2| / |r2|
    double velocity_residual{0.0};  ///< |v(tof) - v2| / |v2|
    double tof_residual{0.0};       ///< position miss converted to normalized time along the arrival speed
    bool direction_ok{false};       ///< (r1 x v1) points along the transfer-plane normal
    bool energy_h_consistent{false};
    bool propagated{false};  ///< false if propagation failed; residuals are then infinite
};

/// Propagates (r1, v1) for tof and compares with (r2, v2). Never throws.
ValidationReport validate_solution(const LambertProblem &problem, const Vec3 &v1, const Vec3 &v2) noexcept;

/**
 * @brief Reference single-revolution solution by bisection on the Lancaster time equation.
 *
 * time_tol 1e-14 (normalized) with a bracket-width floor at a few ulps.
 * @throws LambertError(NotBracketed) when the flight time admits no single-revolution root.
 */
std::pair<Vec3, Vec3> reference_solve(const LambertProblem &problem);

}  // namespace lambert
