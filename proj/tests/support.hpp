// Shared helpers for the unit tests and the acceptance binary: random problem
// generators, independent oracles and the module property checks.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "lambert/geometry.hpp"
#include "lambert/vec3.hpp"

namespace lambert::testing {

/// Outcome of a property sweep: ok, the worst observed metric and how many checks ran.
struct PropertyResult {
    bool ok{true};
    double worst{0.0};
    long checked{0};
    std::string detail;
};

double rel_err(const Vec3 &a, const Vec3 &b);

/// Uniform double in [lo, hi) drawn from the 53 high bits of a 64-bit Mersenne Twister.
double uniform(std::mt19937_64 &rng, double lo, double hi);

/// Random proper rotation applied to in-plane vectors, so tests exercise 3D geometry.
struct Rotation {
    double m[3][3];
    Vec3 apply(const Vec3 &v) const;
};
Rotation random_rotation(std::mt19937_64 &rng);

/// Problem with |r1| = 1, |r2| = ratio, transfer angle theta (long way if theta > pi),
/// normalized flight time t_norm and mu = 1, rotated by rot.
LambertProblem oriented_problem(double theta, double t_norm, double ratio, const Rotation &rot);

/// Largest relative move of the propagated arrival position when one component of v1
/// changes by one ulp: the floor any double-precision v1 can reach in validate_solution.
double ulp_sensitivity(const LambertProblem &p, const Vec3 &v1);

/// Stumpff functions in long double, by power series for |z| < 1 and closed form otherwise.
/// Independent of the library implementation.
struct StumpffLd {
    long double c;
    long double s;
};
StumpffLd stumpff_ld(long double z);

/// Bottom-up evaluation of Battin's continued fraction to a fixed depth.
double battin_xi_bottom_up(double x, int depth);

// Property sweeps (all seeded, deterministic).

/// dS/dz = (C - 3S)/(2z) and dC/dz = (1 - zS - 2C)/(2z) on a log grid of |z| in
/// [1e-6, 0.99 * 4 pi^2], both signs, relative 1e-10 against the long-double oracle.
PropertyResult stumpff_identities();

/// Strict monotonicity of Lagrange, Lancaster, Bate and Simo time equations on 200-point
/// grids over 100 random geometries.
PropertyResult formulation_monotonicity(std::uint64_t seed = 7, int geometries = 100, int points = 200);

/// Elements, f&g and radial/transversal reconstructions agree pairwise to relative 1e-10
/// on random ellipses away from g = 0; endpoint energy and angular momentum agree to 1e-10.
PropertyResult velocity_equivalence(std::uint64_t seed = 11, int samples = 100);

/// Propagating by dt then -dt returns the initial state to 1e-12 (relative).
PropertyResult propagation_reversibility(std::uint64_t seed = 13, int samples = 200);

}  // namespace lambert::testing
