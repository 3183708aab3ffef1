#include "lambert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lambert/error.hpp"
#include "lambert/rootfind.hpp"
#include "lambert/specfun.hpp"
#include "lambert/tof.hpp"
#include "lambert/velocity.hpp"

namespace lambert {

StateVector kepler_propagate(const Vec3 &r0, const Vec3 &v0, double dt, double mu) {
    using ld = long double;
    const double rn_d = norm(r0);
    if (rn_d == 0.0) throw LambertError(ErrorCode::ZeroVector, "zero position in propagation");
    if (dt == 0.0) return {r0, v0};

    // Extended precision throughout: the f and g coefficients cancel heavily after close
    // periapsis passes, and this routine is the yardstick for every solver.
    const ld rx = r0.x, ry = r0.y, rz = r0.z, vx = v0.x, vy = v0.y, vz = v0.z;
    const ld rn = std::sqrt(rx * rx + ry * ry + rz * rz);
    const ld rv = rx * vx + ry * vy + rz * vz;
    const ld sqmu = std::sqrt(static_cast<ld>(mu));
    const ld t = dt;
    const ld alpha = 2.0L / rn - (vx * vx + vy * vy + vz * vz) / mu;  // 1/a
    const ld sigma0 = rv / sqmu;

    // Universal Kepler equation F(chi) = sigma0 chi^2 C + (1 - alpha r0) chi^3 S + r0 chi - sqrt(mu) dt.
    // `scale` is the sum of the term magnitudes, the yardstick for the relative residual.
    ld scale = 1.0L;
    StumpffPairExt st{};
    auto kepler = [&](ld chi, ld &f, ld &fp, ld &fpp) {
        const ld chi2 = chi * chi;
        const ld psi = alpha * chi2;
        st = stumpff_extended(psi);
        const ld t1 = sigma0 * chi2 * st.c_val, t2 = (1.0L - alpha * rn) * chi2 * chi * st.s_val, t3 = rn * chi;
        f = t1 + t2 + t3 - sqmu * t;
        scale = std::max(1.0L, std::abs(t1) + std::abs(t2) + std::abs(t3) + sqmu * std::abs(t));
        fp = sigma0 * chi * (1.0L - psi * st.s_val) + (1.0L - alpha * rn) * chi2 * st.c_val + rn;  // = r
        fpp = sigma0 * (1.0L - psi * st.c_val) + (1.0L - alpha * rn) * chi * (1.0L - psi * st.s_val);
    };

    ld chi = sqmu * t / rn;
    if (alpha > 1e-6L) {
        chi = sqmu * t * alpha;
    } else if (alpha < -1e-6L) {
        const ld a = 1.0L / alpha;
        const ld sgn = t < 0.0L ? -1.0L : 1.0L;
        const ld arg = -2.0L * mu * alpha * t / (rv + sgn * std::sqrt(-mu * a) * (1.0L - rn * alpha));
        if (arg > 0.0L) chi = sgn * std::sqrt(-a) * std::log(arg);
    }

    constexpr int kMaxIter = 100;
    constexpr ld kN = 5.0L;
    ld f = 0.0L, fp = 1.0L, fpp = 0.0L;
    bool done = false;
    // Once the residual target is met, polish with up to two more updates.
    int polish = 0;
    for (int it = 0; it < kMaxIter; ++it) {
        kepler(chi, f, fp, fpp);
        const ld disc = std::abs((kN - 1.0L) * (kN - 1.0L) * fp * fp - kN * (kN - 1.0L) * f * fpp);
        const ld den = fp + (fp < 0.0L ? -std::sqrt(disc) : std::sqrt(disc));
        const ld step = kN * f / den;
        if (std::abs(f) <= 1e-13L * scale) {
            done = true;
            const ld floor = 4.0L * std::numeric_limits<ld>::epsilon() * std::max(1.0L, std::abs(chi));
            if (std::abs(step) <= floor || ++polish > 2) break;
        }
        chi -= step;
    }
    if (!done) throw LambertError(ErrorCode::NoConvergence, "Kepler propagation did not converge");

    kepler(chi, f, fp, fpp);
    const ld chi2 = chi * chi;
    const ld psi = alpha * chi2;
    const ld r = fp;
    const ld lf = 1.0L - chi2 / rn * st.c_val;
    const ld lg = t - chi2 * chi / sqmu * st.s_val;
    const ld fdot = sqmu / (r * rn) * chi * (psi * st.s_val - 1.0L);
    const ld gdot = 1.0L - chi2 / r * st.c_val;
    auto combine = [](ld a, ld x0, ld b, ld y0) { return static_cast<double>(a * x0 + b * y0); };
    return {{combine(lf, rx, lg, vx), combine(lf, ry, lg, vy), combine(lf, rz, lg, vz)},
            {combine(fdot, rx, gdot, vx), combine(fdot, ry, gdot, vy), combine(fdot, rz, gdot, vz)}};
}

ValidationReport validate_solution(const LambertProblem &problem, const Vec3 &v1, const Vec3 &v2) noexcept {
    ValidationReport rep;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    rep.position_residual = kInf;
    rep.velocity_residual = kInf;
    rep.tof_residual = kInf;
    if (!is_finite(v1) || !is_finite(v2)) return rep;
    try {
        const auto [g, scale] = build_geometry(problem);
        const double mu = problem.mu();
        const Vec3 &r1 = problem.r1();
        const Vec3 &r2 = problem.r2();

        rep.direction_ok = dot(cross(r1, v1), g.plane_normal) > 0.0;
        const Vec3 h1 = cross(r1, v1), h2 = cross(r2, v2);
        const double e1 = 0.5 * dot(v1, v1) - mu / norm(r1);
        const double e2 = 0.5 * dot(v2, v2) - mu / norm(r2);
        const double escale = mu / norm(r1);
        rep.energy_h_consistent =
            std::abs(e1 - e2) <= 1e-8 * std::max(escale, std::abs(e1)) && norm(h1 - h2) <= 1e-8 * std::max(norm(h1), 1e-300);

        const StateVector out = kepler_propagate(r1, v1, problem.tof(), mu);
        rep.propagated = true;
        const double miss = norm(out.r - r2);
        rep.position_residual = miss / norm(r2);
        rep.velocity_residual = norm(out.v - v2) / norm(v2);
        rep.tof_residual = miss / norm(out.v) / scale.time_scale;
    } catch (...) {
        rep.propagated = false;
    }
    return rep;
}

std::pair<Vec3, Vec3> reference_solve(const LambertProblem &problem) {
    const auto [g, scale] = build_geometry(problem);
    // t decreases in x; bisect on w = -x so that t(w) increases.
    auto eval = [&g](double w) { return tof_lancaster_x(-w, g, 0); };
    // Upper end of w is the x = -1 asymptote; the lower end grows until t(-x) < TOF.
    double w_lo = -1.0;
    while (!(eval(w_lo).t < g.t_norm)) {
        w_lo *= 2.0;
        if (w_lo < -1e15) throw LambertError(ErrorCode::NotBracketed, "flight time too short to bracket");
    }
    // The asymptote at x = -1 is only approached to within an ulp of w = 1.
    if (!(detail::ordered_time(eval(std::nextafter(1.0, 0.0))) > g.t_norm))
        throw LambertError(ErrorCode::NotBracketed, "flight time beyond the representable approach to the asymptote");
    ToleranceSpec tol;
    tol.time_tol = 1e-14;
    tol.bisection_max_iter = 400;
    const IterationTrace tr = bisection(eval, w_lo, 1.0, g.t_norm, tol);
    if (!tr.converged()) throw LambertError(ErrorCode::NotBracketed, "reference bisection failed");

    const VelocityComponents comp = lancaster_components(-tr.final_w, g);
    const auto v = velocity_from_radial_transversal(comp, g.ir1, g.ir2, g.plane_normal);
    return {scale.to_physical_velocity(v.first), scale.to_physical_velocity(v.second)};
}

}  // namespace lambert
