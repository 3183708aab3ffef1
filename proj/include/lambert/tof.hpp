// Transfer-time formulations t(w; geometry). All times are normalized (mu = 1, |r1| = 1).
#pragma once

#include <vector>

#include "lambert/evaluation.hpp"
#include "lambert/geometry.hpp"

namespace lambert {

/** @brief Single-revolution domain of a formulation's free parameter. */
struct DomainSpec {
    double lower;
    double upper;
    std::vector<double> singularities;  ///< asymptote locations inside or on [lower, upper]
    bool increasing;                    ///< direction of monotonicity of t(w)
};

/// Euler's parabolic transfer time; cells with t_norm above it are elliptic.
double parabolic_time(const TransferGeometry &g) noexcept;

/// Izzo's normalized time T = t_norm * sqrt(2 / s^3) and its inverse factor.
double izzo_time_factor(const TransferGeometry &g) noexcept;

/**
 * @brief Lagrange's equation in Battin's x form, T = (eta^3 Q(S) + 4 lambda eta) / 2.
 *
 * Q = 4/3 2F1(3, 1; 5/2; S) is summed as a series at every x, so once |S| >= 1 the
 * evaluation reports NonReal. Decreasing in x on (-1, inf); provides t and dt.
 */
TofEvaluation tof_lagrange_x(double x, const TransferGeometry &g);
DomainSpec lagrange_domain(const TransferGeometry &g);

/**
 * @brief Lancaster-Blanchard time equation with three derivatives (Gooding, Izzo).
 *
 * |x - 1| < 1e-2 switches to the hypergeometric series form. Decreasing in x on (-1, inf).
 */
TofEvaluation tof_lancaster_x(double x, const TransferGeometry &g, int order = 3);
DomainSpec lancaster_domain(const TransferGeometry &g);

/// Auxiliary angle psi of the Lancaster variable (half the eccentric/hyperbolic anomaly difference).
double lancaster_psi(double x, const TransferGeometry &g);

/**
 * @brief Universal-variable time equation with Stumpff functions, z = dE^2 or -dF^2.
 *
 * Provides t and dt/dz. y(z) < 0 is NonReal; z >= 4 pi^2 is BeyondAsymptote.
 */
TofEvaluation tof_bate_z(double z, const TransferGeometry &g);
DomainSpec bate_domain(const TransferGeometry &g);

/// Bate's auxiliary quantities A and y(z); the Lagrange coefficients follow as
/// f = 1 - y/r1, g = A sqrt(y), gdot = 1 - y/r2.
struct BateAuxiliary {
    double a;
    double y;
};
BateAuxiliary bate_auxiliary(double z, const TransferGeometry &g);

/// z at which Bate's y(z) vanishes for theta < pi, found by bisection to 1e-12; -inf otherwise.
double bate_real_wall(const TransferGeometry &g);

/**
 * @brief Time equation in the Levi-Civita regularized parameter z = psi^2 (-psi^2 hyperbolic).
 *
 * Written with products and sums of positive terms only, so it keeps full precision near
 * the parabola and near theta = pi. Increasing on [z_f, pi^2); t only.
 */
TofEvaluation tof_simo_z(double z, const TransferGeometry &g);
DomainSpec simo_domain(const TransferGeometry &g);

/// Lower wall z_f = -acosh((r1 + r2) / (2 sqrt(r1 r2) cos(theta/2)))^2 for theta < pi, else -inf.
double simo_lower_wall(const TransferGeometry &g) noexcept;

/// Parameter mappings into Simo's z (and Bate's z = 4 z_simo).
double simo_z_from_lancaster_x(double x, const TransferGeometry &g);
double simo_z_from_gauss_x1(double x1) noexcept;
double simo_z_from_battin_x(double x) noexcept;

/// Inverse of simo_z_from_lancaster_x, used to measure times with the well-conditioned
/// Lancaster form where the Simo evaluator loses digits (large negative z).
double lancaster_x_from_simo_z(double z, const TransferGeometry &g);

/** @brief Constants of Gauss's equations for one geometry. */
struct GaussContext {
    double ell;  ///< (r1 + r2) / (4 sqrt(r1 r2) cos(theta/2)) - 1/2
    double m;    ///< t^2 / (2 sqrt(r1 r2) cos(theta/2))^3
    double sin_theta;
};

GaussContext make_gauss_context(const TransferGeometry &g) noexcept;

struct GaussStep {
    double y_next;
    double x1;      ///< sin^2(dE/4), or -sinh^2(dF/4)
    double big_x;   ///< Moulton's series X(x1) = 4/3 2F1(3, 1; 5/2; x1)
    int terms;
};

/**
 * @brief One successive-substitution update of the sector-to-triangle ratio y.
 * @throws LambertError NonPhysicalY for y <= 0, a negative triangle (theta > pi) or a
 *         non-positive update; DivergentSeries when |x1| >= 1.
 */
GaussStep gauss_step(double y, const GaussContext &ctx);
GaussStep gauss_step(double y, const TransferGeometry &g);

/** @brief Constants of Battin's elegant algorithm for one geometry. */
struct BattinContext {
    double l;  ///< ((1 - lambda) / (1 + lambda))^2
    double m;  ///< 8 t^2 / (s^3 (1 + lambda)^6)
};

BattinContext make_battin_context(const TransferGeometry &g) noexcept;

struct BattinStep {
    double x_next;
    double h1;
    double h2;
    double b;      ///< 27 h2 / (4 (1 + h1)^3)
    double y;      ///< largest positive root of y^3 - (1 + h1) y^2 - h2 = 0
    int xi_depth;
};

/**
 * @brief One substitution update of Battin's x with the cubic solved in closed form.
 * @throws LambertError NegativeRadicand when 1 + B < 0 or x <= -1.
 */
BattinStep battin_step(double x, const BattinContext &ctx);
BattinStep battin_step(double x, const TransferGeometry &g);

}  // namespace lambert
