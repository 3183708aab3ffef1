#include "lambert/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lambert/error.hpp"

namespace lambert {

namespace {

Vec3 rotate_313(const Vec3 &v, double raan, double inc, double omega) {
    const double cO = std::cos(raan), sO = std::sin(raan);
    const double ci = std::cos(inc), si = std::sin(inc);
    const double cw = std::cos(omega), sw = std::sin(omega);
    // Rz(omega)
    const double x1 = cw * v.x - sw * v.y;
    const double y1 = sw * v.x + cw * v.y;
    const double z1 = v.z;
    // Rx(i)
    const double x2 = x1;
    const double y2 = ci * y1 - si * z1;
    const double z2 = si * y1 + ci * z1;
    // Rz(raan)
    return {cO * x2 - sO * y2, sO * x2 + cO * y2, z2};
}

}  // namespace

VelocityPair velocity_from_elements(const ConicElements &el, double mu) {
    if (!(el.p > 0.0) || !std::isfinite(el.p))
        throw LambertError(ErrorCode::InvalidElements, "semi-latus rectum must be positive");
    if (!std::isfinite(el.e) || !std::isfinite(el.nu1) || !std::isfinite(el.nu2) || !std::isfinite(el.i) ||
        !std::isfinite(el.omega) || !std::isfinite(el.raan))
        throw LambertError(ErrorCode::InvalidElements, "non-finite element");
    const double k = std::sqrt(mu / el.p);
    const Vec3 p1{-k * std::sin(el.nu1), k * (el.e + std::cos(el.nu1)), 0.0};
    const Vec3 p2{-k * std::sin(el.nu2), k * (el.e + std::cos(el.nu2)), 0.0};
    return {rotate_313(p1, el.raan, el.i, el.omega), rotate_313(p2, el.raan, el.i, el.omega)};
}

VelocityPair velocity_from_fg(const FgCoefficients &fg, const Vec3 &r1, const Vec3 &r2, double g_floor) {
    if (!(std::abs(fg.g) > g_floor)) throw LambertError(ErrorCode::GSingularity, "|g| below floor");
    const double inv = 1.0 / fg.g;
    return {(r2 - fg.f * r1) * inv, (fg.gdot * r2 - r1) * inv};
}

VelocityPair velocity_from_radial_transversal(const VelocityComponents &comp, const Vec3 &r1, const Vec3 &r2,
                                              const Vec3 &plane_normal) {
    constexpr double kTol = 1e-10;
    const Vec3 i1 = unit(r1), i2 = unit(r2);
    if (!(std::abs(norm(plane_normal) - 1.0) <= kTol) || !(std::abs(dot(plane_normal, i1)) <= kTol) ||
        !(std::abs(dot(plane_normal, i2)) <= kTol))
        throw LambertError(ErrorCode::BadNormal, "plane normal not orthogonal to the radii");
    const Vec3 t1 = cross(plane_normal, i1);
    const Vec3 t2 = cross(plane_normal, i2);
    return {comp.vr1 * i1 + comp.vt1 * t1, comp.vr2 * i2 + comp.vt2 * t2};
}

PlaneOrientation plane_orientation(const TransferGeometry &g) noexcept {
    const Vec3 &h = g.plane_normal;
    const double inc = std::acos(std::clamp(h.z, -1.0, 1.0));
    const double sin_i = std::hypot(h.x, h.y);
    const double raan = sin_i > 1e-14 ? std::atan2(h.x, -h.y) : 0.0;
    const Vec3 n{std::cos(raan), std::sin(raan), 0.0};
    const double u1 = std::atan2(dot(g.ir1, cross(h, n)), dot(g.ir1, n));
    return {inc, raan, u1};
}

ConicElements elements_from_regularized(double cos_phi, double sin2_phi, double d, const TransferGeometry &g) {
    const double srr = std::sqrt(g.r1n * g.r2n);
    const double p = 2.0 * g.r1n * g.r2n * g.sin_half * g.sin_half / d;
    const double inv_a = 2.0 * sin2_phi / d;
    const double k = srr * g.cos_half;
    const double ec = p / g.r1n - 1.0;
    const double es = 2.0 * srr * g.sin_half * (k - g.r1n * cos_phi) / (g.r1n * d);
    const double e = std::hypot(ec, es);
    const double nu1 = std::atan2(es, ec);
    const PlaneOrientation o = plane_orientation(g);
    ConicElements el;
    el.p = p;
    el.a = inv_a == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_a;
    el.e = e;
    el.nu1 = nu1;
    el.nu2 = nu1 + g.theta;
    el.i = o.i;
    el.raan = o.raan;
    el.omega = o.u1 - nu1;
    return el;
}

VelocityComponents lancaster_components(double x, const TransferGeometry &g) {
    const double lam = g.lambda, lam2 = lam * lam;
    const double y = std::sqrt(1.0 - lam2 + lam2 * x * x);
    const double gamma = std::sqrt(0.5 * g.s);
    const double rho = (g.r1n - g.r2n) / g.c;
    const double sigma = 2.0 * std::sqrt(g.r1n * g.r2n) * g.sin_half / g.c;
    const double ly_x = lam * y - x;
    const double ly_px = lam * y + x;
    // y + lambda x loses digits for lambda < 0; (y^2 - lambda^2 x^2) = 1 - lambda^2.
    const double y_lx = (lam * x < 0.0) ? (1.0 - lam2) / (y - lam * x) : y + lam * x;
    const double vt = gamma * sigma * y_lx;
    return {gamma * (ly_x - rho * ly_px) / g.r1n, vt / g.r1n, -gamma * (ly_x + rho * ly_px) / g.r2n, vt / g.r2n};
}

}  // namespace lambert
