// Velocity reconstruction: from conic elements, from Lagrange f and g, and from
// radial/transversal components.
#pragma once

#include <utility>

#include "lambert/geometry.hpp"
#include "lambert/vec3.hpp"

namespace lambert {

struct ConicElements {
    double p;      ///< semi-latus rectum
    double a;      ///< semi-major axis, negative for hyperbolas, infinite for a parabola
    double e;      ///< eccentricity
    double nu1;    ///< true anomaly at r1
    double nu2;    ///< true anomaly at r2
    double i;      ///< inclination
    double omega;  ///< argument of periapsis
    double raan;   ///< longitude of the ascending node
};

struct FgCoefficients {
    double f;
    double g;
    double gdot;
};

struct VelocityComponents {
    double vr1;
    double vt1;
    double vr2;
    double vt2;
};

using VelocityPair = std::pair<Vec3, Vec3>;

/// Perifocal velocity sqrt(mu/p) [-sin nu, e + cos nu, 0] rotated by Rz(raan) Rx(i) Rz(omega).
/// @throws LambertError(InvalidElements) for p <= 0 or non-finite angles.
VelocityPair velocity_from_elements(const ConicElements &el, double mu);

/// v1 = (r2 - f r1) / g, v2 = (gdot r2 - r1) / g.
/// @throws LambertError(GSingularity) when |g| <= g_floor.
VelocityPair velocity_from_fg(const FgCoefficients &fg, const Vec3 &r1, const Vec3 &r2, double g_floor = 1e-12);

/// v_i = vr_i r_i/|r_i| + vt_i (n x r_i/|r_i|).
/// @throws LambertError(BadNormal) unless the normal is a unit vector orthogonal to both radii to 1e-10.
VelocityPair velocity_from_radial_transversal(const VelocityComponents &comp, const Vec3 &r1, const Vec3 &r2,
                                              const Vec3 &plane_normal);

/**
 * @brief Elements of the transfer conic from the regularized anomaly half-difference.
 *
 * cos_phi and sin2_phi are cos(psi) and sin^2(psi) (cosh and -sinh^2 on a hyperbola),
 * d = r1 + r2 - 2 sqrt(r1 r2) cos(theta/2) cos(psi). Normalized units.
 */
ConicElements elements_from_regularized(double cos_phi, double sin2_phi, double d, const TransferGeometry &g);

/// Inclination, node and argument of latitude of r1 for the transfer plane of g.
struct PlaneOrientation {
    double i;
    double raan;
    double u1;
};
PlaneOrientation plane_orientation(const TransferGeometry &g) noexcept;

/// Radial/transversal speeds from the Lancaster variable x (normalized units).
VelocityComponents lancaster_components(double x, const TransferGeometry &g);

}  // namespace lambert
