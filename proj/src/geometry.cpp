#include "lambert/geometry.hpp"

#include <cmath>
#include <numbers>

#include "lambert/error.hpp"

namespace lambert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative size of |r1 x r2| below which antiparallel radii no longer define a plane.
constexpr double kCollinearTol = 1e-12;

Vec3 default_normal(const Vec3 &ir1) {
    const Vec3 ez{0.0, 0.0, 1.0};
    Vec3 n = ez - ir1 * dot(ez, ir1);
    if (norm(n) < 1e-6) {
        const Vec3 ex{1.0, 0.0, 0.0};
        n = ex - ir1 * dot(ex, ir1);
    }
    return unit(n);
}

}  // namespace

LambertProblem::LambertProblem(const Vec3 &r1, const Vec3 &r2, double tof, double mu, bool long_way)
    : r1_(r1), r2_(r2), tof_(tof), mu_(mu), long_way_(long_way) {
    if (!is_finite(r1) || !is_finite(r2)) throw LambertError(ErrorCode::InvalidProblem, "non-finite position");
    if (!(std::isfinite(tof) && tof > 0.0)) throw LambertError(ErrorCode::InvalidProblem, "tof must be > 0");
    if (!(std::isfinite(mu) && mu > 0.0)) throw LambertError(ErrorCode::InvalidProblem, "mu must be > 0");
    // Rejects zero radii and theta in {0, 2*pi}.
    (void)transfer_angle(r1, r2, long_way);
}

TransferAngle transfer_angle(const Vec3 &r1, const Vec3 &r2, bool long_way) {
    const double n1 = norm(r1);
    const double n2 = norm(r2);
    if (n1 == 0.0 || n2 == 0.0) throw LambertError(ErrorCode::ZeroVector, "position vector has zero norm");

    const Vec3 h = cross(r1, r2);
    const double hn = norm(h);
    const double d = dot(r1, r2);
    const double principal = std::atan2(hn, d);
    if (principal == 0.0) throw LambertError(ErrorCode::DegenerateAngle, "r1 and r2 are collinear with theta = 0");

    Vec3 normal = (hn <= kCollinearTol * n1 * n2 && d < 0.0) ? default_normal(r1 / n1) : h / hn;
    double theta = principal;
    if (long_way) {
        theta = kTwoPi - principal;
        normal = -normal;
    }
    if (theta <= 0.0 || theta >= kTwoPi) throw LambertError(ErrorCode::DegenerateAngle, "theta is 0 or 2*pi");
    return {theta, normal};
}

std::pair<TransferGeometry, ScaleFactors> build_geometry(const LambertProblem &problem) {
    const auto [theta, normal] = transfer_angle(problem.r1(), problem.r2(), problem.long_way());

    const double length = norm(problem.r1());
    const double time_scale = std::sqrt(length * length * length / problem.mu());
    const ScaleFactors scale{length, time_scale, length / time_scale};

    TransferGeometry g{};
    g.r1n = 1.0;
    g.r2n = norm(problem.r2()) / length;
    g.theta = theta;
    g.plane_normal = normal;
    g.ir1 = unit(problem.r1());
    g.ir2 = unit(problem.r2());
    g.sin_half = std::sin(0.5 * theta);
    g.cos_half = std::cos(0.5 * theta);
    g.sin_theta = 2.0 * g.sin_half * g.cos_half;
    g.cos_theta = 1.0 - 2.0 * g.sin_half * g.sin_half;

    const double dr = g.r1n - g.r2n;
    g.c = std::sqrt(dr * dr + 4.0 * g.r1n * g.r2n * g.sin_half * g.sin_half);
    g.s = 0.5 * (g.r1n + g.r2n + g.c);
    // s (s - c) = r1 r2 cos^2(theta/2); avoids the cancellation in sqrt(1 - c/s) near theta = pi.
    g.lambda = std::sqrt(g.r1n * g.r2n) * g.cos_half / g.s;
    g.t_norm = scale.to_normalized_time(problem.tof());
    return {g, scale};
}

}  // namespace lambert
