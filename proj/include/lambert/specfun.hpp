#pragma once

namespace lambert {

/** @brief Stumpff functions C(z), S(z) and their first derivatives. */
struct StumpffPair {
    double c_val;
    double s_val;
    double dc_dz;
    double ds_dz;
};

/// Below this |z| the Stumpff functions are summed as power series.
inline constexpr double kStumpffSeriesLimit = 1.0;
/// Admissible z: (-kStumpffZMin, kStumpffZMax). cosh(sqrt(z)) overflows near z = -5e5.
inline constexpr double kStumpffZMin = 3.6e5;
inline constexpr double kStumpffZMax = 3.6e5;

/**
 * @brief Evaluates C(z) and S(z) with derivatives.
 * @throws LambertError(OutOfGuardRange) for non-finite z or z outside the guard range.
 */
StumpffPair stumpff(double z);

/// C(z) and S(z) in extended precision, for the reference propagator. Same guard range.
struct StumpffPairExt {
    long double c_val;
    long double s_val;
};
StumpffPairExt stumpff_extended(long double z);

struct SeriesResult {
    double value;
    int terms;       ///< number of terms summed
    bool converged;  ///< false if the term cap was hit before the tolerance
};

/**
 * @brief Gauss hypergeometric series 2F1(a, b; c; x).
 *
 * Summed until a term falls below 1e-14 of the partial sum or 500 terms.
 * @throws LambertError(DivergentSeries) when |x| >= 1.
 */
SeriesResult gauss_2f1(double a, double b, double c, double x);

struct ContinuedFractionResult {
    double value;
    int depth;  ///< number of partial fractions consumed
};

/**
 * @brief Battin's continued fraction xi(x) of the elegant Lambert algorithm.
 *
 * xi(x) = 8 (sqrt(1+x) + 1) / (3 + 1 / (5 + eta + (9/7) eta / (1 + (16/63) eta / (1 + ...))))
 * with eta = x / (1 + sqrt(1+x))^2 and partial numerators n^2/(4n^2 - 1) for n >= 4
 * (Battin, An Introduction to the Mathematics and Methods of Astrodynamics, sec. 7.5).
 * The tail is evaluated forward with the modified Lentz algorithm to relative 1e-15.
 * xi(0) = 5.
 * @throws LambertError(NoConvergence) if max_depth partial fractions do not suffice.
 */
ContinuedFractionResult battin_xi(double x, int max_depth = 200);

/**
 * @brief Largest real root of the monic cubic y^3 + a y^2 + b y + c.
 *
 * Trigonometric form when there are three real roots, Cardano otherwise.
 */
double largest_real_cubic_root(double a, double b, double c);

}  // namespace lambert
