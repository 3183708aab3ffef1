// Transfer geometry and the unit normalization (mu = 1, |r1| = 1) shared by every solver.
#pragma once

#include <utility>

#include "lambert/vec3.hpp"

namespace lambert {

/// Boundary-value input: two positions, a flight time, mu and the branch flag.
/// Construction validates the inputs and throws LambertError on violation.
class LambertProblem {
public:
    LambertProblem(const Vec3 &r1, const Vec3 &r2, double tof, double mu, bool long_way = false);

    const Vec3 &r1() const noexcept { return r1_; }
    const Vec3 &r2() const noexcept { return r2_; }
    double tof() const noexcept { return tof_; }
    double mu() const noexcept { return mu_; }
    bool long_way() const noexcept { return long_way_; }

private:
    Vec3 r1_;
    Vec3 r2_;
    double tof_;
    double mu_;
    bool long_way_;
};

struct TransferAngle {
    double theta;       ///< (0, 2*pi), measured along the direction of motion
    Vec3 plane_normal;  ///< unit normal; motion is counter-clockwise about it
};

/// Transfer angle from r1 to r2. Collinear opposite vectors (theta = pi) get a normal
/// orthogonal to r1, preferring the +z side.
TransferAngle transfer_angle(const Vec3 &r1, const Vec3 &r2, bool long_way);

struct ScaleFactors {
    double length_scale;    ///< |r1|
    double time_scale;      ///< 1 / mean motion of the circular orbit at |r1|
    double velocity_scale;  ///< length_scale / time_scale

    double to_normalized_time(double t) const noexcept { return t / time_scale; }
    double to_physical_time(double t) const noexcept { return t * time_scale; }
    Vec3 to_physical_velocity(const Vec3 &v) const noexcept { return v * velocity_scale; }
    Vec3 to_normalized_velocity(const Vec3 &v) const noexcept { return v / velocity_scale; }
};

/// Normalized geometric invariants of a transfer. Lengths are in units of |r1| and
/// times in units of time_scale, so r1n == 1 and mu == 1.
struct TransferGeometry {
    double r1n;
    double r2n;
    double c;       ///< chord
    double s;       ///< semiperimeter
    double theta;
    double lambda;  ///< sign(cos(theta/2)) * sqrt((s - c) / s)
    double t_norm;
    Vec3 plane_normal;

    // Precomputed once so hot paths never repeat trigonometry of theta.
    Vec3 ir1;  ///< unit radial direction at departure
    Vec3 ir2;  ///< unit radial direction at arrival
    double sin_theta;
    double cos_theta;
    double sin_half;  ///< sin(theta/2), always >= 0
    double cos_half;  ///< cos(theta/2), negative for the long way
};

std::pair<TransferGeometry, ScaleFactors> build_geometry(const LambertProblem &problem);

}  // namespace lambert
