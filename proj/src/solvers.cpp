#include "lambert/solvers.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lambert/error.hpp"
#include "lambert/specfun.hpp"
#include "lambert/tof.hpp"
#include "lambert/velocity.hpp"

namespace lambert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Setup {
    TransferGeometry g;
    ScaleFactors scale;
    Vec3 r1n;  // normalized position vectors
    Vec3 r2n;
};

Setup make_setup(const LambertProblem &problem) {
    auto [g, scale] = build_geometry(problem);
    return {g, scale, problem.r1() / scale.length_scale, problem.r2() / scale.length_scale};
}

FailureReason reason_from_trace(const IterationTrace &tr) noexcept {
    switch (tr.status) {
        case TraceStatus::Converged: return FailureReason::None;
        case TraceStatus::MaxIterations: return FailureReason::MaxIterations;
        case TraceStatus::NotBracketed: return FailureReason::NotBracketed;
        case TraceStatus::ZeroDenominator: return FailureReason::ZeroDenominator;
        case TraceStatus::NonRealEncountered: return FailureReason::NonReal;
        case TraceStatus::Diverged:
            return tr.final_flag == DomainFlag::BeyondAsymptote ? FailureReason::AsymptoteJump : FailureReason::NonReal;
    }
    return FailureReason::NonReal;
}

FailureReason reason_from_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::GSingularity: return FailureReason::GSingularity;
        case ErrorCode::NonPhysicalY: return FailureReason::NonPhysicalY;
        case ErrorCode::DivergentSeries: return FailureReason::DivergentSeries;
        case ErrorCode::NotBracketed: return FailureReason::NotBracketed;
        case ErrorCode::NoConvergence: return FailureReason::MaxIterations;
        default: return FailureReason::NonReal;
    }
}

SolverOutcome failed(FailureReason reason, IterationTrace trace = {}, double residual = kNaN) {
    SolverOutcome out;
    out.status = OutcomeStatus::Failed;
    out.reason = reason;
    out.iterations = trace.iterations;
    out.time_residual = residual;
    out.trace = std::move(trace);
    return out;
}

SolverOutcome failed_trace(IterationTrace trace, double tof) {
    const double residual = std::abs(trace.final_t - tof);
    const FailureReason reason = reason_from_trace(trace);
    return failed(reason, std::move(trace), residual);
}

// Assembles a converged outcome from normalized velocities; the only de-normalization point.
// An iterate whose time residual exceeds the tolerance is never reported as converged.
SolverOutcome converged(const Setup &s, const VelocityPair &v, IterationTrace trace, double residual,
                        const ToleranceSpec &tol) {
    if (!(residual <= tol.time_tol)) {
        trace.status = TraceStatus::MaxIterations;
        return failed(FailureReason::MaxIterations, std::move(trace), residual);
    }
    SolverOutcome out;
    out.v1 = s.scale.to_physical_velocity(v.first);
    out.v2 = s.scale.to_physical_velocity(v.second);
    out.iterations = trace.iterations;
    out.time_residual = residual;
    out.trace = std::move(trace);
    if (!is_finite(out.v1) || !is_finite(out.v2)) {
        out.reason = FailureReason::NonReal;
        return out;
    }
    out.status = OutcomeStatus::Converged;
    return out;
}

// Time of flight at a Simo variable, measured through the Lancaster form.
TofEvaluation time_at_simo_z(double z, const TransferGeometry &g) {
    return tof_lancaster_x(lancaster_x_from_simo_z(z, g), g, 0);
}

VelocityPair radial_transversal(const Setup &s, double x) {
    return velocity_from_radial_transversal(lancaster_components(x, s.g), s.g.ir1, s.g.ir2, s.g.plane_normal);
}

VelocityPair regularized_elements(const Setup &s, double cos_phi, double sin2_phi, double one_minus_cos) {
    const TransferGeometry &g = s.g;
    const double sr1 = std::sqrt(g.r1n), sr2 = std::sqrt(g.r2n);
    const double sq4 = std::sin(0.25 * g.theta);
    const double d = (sr1 - sr2) * (sr1 - sr2) + 2.0 * sr1 * sr2 * (2.0 * sq4 * sq4 + g.cos_half * one_minus_cos);
    return velocity_from_elements(elements_from_regularized(cos_phi, sin2_phi, d, g), 1.0);
}

VelocityPair bate_fg(const Setup &s, double z, double g_floor) {
    const BateAuxiliary aux = bate_auxiliary(z, s.g);
    const FgCoefficients fg{1.0 - aux.y / s.g.r1n, aux.a * std::sqrt(aux.y), 1.0 - aux.y / s.g.r2n};
    return velocity_from_fg(fg, s.r1n, s.r2n, g_floor);
}

// ------------------------------------------------------------------ Lancaster-based pipelines

SolverOutcome lagrange_nr(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    bool truncated = false;
    IterationTrace tr = newton_raphson(
        [&](double x) {
            TofEvaluation e = tof_lagrange_x(x, g);
            truncated = e.truncated;
            return e;
        },
        0.0, g.t_norm, tol);
    if (!tr.converged()) return failed_trace(std::move(tr), g.t_norm);
    const double x = tr.final_w;
    const double residual = std::abs(tr.final_t - g.t_norm);
    // Truncated sums may guide intermediate steps, but the accepted root needs the full series.
    if (truncated) return failed(FailureReason::DivergentSeries, std::move(tr), residual);
    return converged(s, radial_transversal(s, x), std::move(tr), residual, tol);
}

SolverOutcome gooding_halley(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    ToleranceSpec fixed = tol;
    fixed.time_tol = -1.0;  // never satisfied: exactly three updates, then measure
    fixed.max_iter = 3;
    IterationTrace tr =
        halley([&g](double x) { return tof_lancaster_x(x, g, 2); }, gooding_starter(g), g.t_norm, fixed);
    if (tr.status != TraceStatus::MaxIterations) return failed_trace(std::move(tr), g.t_norm);
    const double residual = std::abs(tr.final_t - g.t_norm);
    if (!(residual <= tol.time_tol)) {
        tr.status = TraceStatus::MaxIterations;
        return failed(FailureReason::MaxIterations, std::move(tr), residual);
    }
    tr.status = TraceStatus::Converged;
    return converged(s, radial_transversal(s, tr.final_w), std::move(tr), residual, tol);
}

SolverOutcome izzo_householder(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    IterationTrace tr =
        householder3([&g](double x) { return tof_lancaster_x(x, g, 3); }, izzo_starter(g), g.t_norm, tol);
    if (!tr.converged()) return failed_trace(std::move(tr), g.t_norm);
    const double residual = std::abs(tr.final_t - g.t_norm);
    return converged(s, radial_transversal(s, tr.final_w), std::move(tr), residual, tol);
}

SolverOutcome izzo_regula_falsi(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    // Iterate on xi = log(1 + x) against tau = log(t). A log residual of time_tol / TOF is an
    // absolute residual of about time_tol; the factor 1/2 absorbs the rounding of exp().
    auto eval = [&g](double xi) {
        TofEvaluation e = tof_lancaster_x(std::expm1(xi), g, 0);
        if (e.in_domain()) e.t = std::log(e.t);
        return e;
    };
    ToleranceSpec log_tol = tol;
    log_tol.time_tol = 0.5 * tol.time_tol / g.t_norm;
    IterationTrace tr = regula_falsi(eval, std::log1p(kIzzoRegulaFalsiX1), std::log1p(kIzzoRegulaFalsiX2),
                                     std::log(g.t_norm), log_tol);
    if (!tr.converged()) {
        const double t = std::exp(tr.final_t);
        return failed(reason_from_trace(tr), std::move(tr), std::abs(t - g.t_norm));
    }
    const double x = std::expm1(tr.final_w);
    const double residual = std::abs(std::exp(tr.final_t) - g.t_norm);
    return converged(s, radial_transversal(s, x), std::move(tr), residual, tol);
}

// ------------------------------------------------------------------ Bate pipelines

constexpr double kBateUpper = 4.0 * kPi * kPi;
constexpr double kValladoLower = -4.0 * kPi;

SolverOutcome bate_finish(const Setup &s, IterationTrace tr, const ToleranceSpec &tol) {
    const double residual = std::abs(tr.final_t - s.g.t_norm);
    return converged(s, bate_fg(s, tr.final_w, tol.g_floor), std::move(tr), residual, tol);
}

SolverOutcome bate_nr(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    IterationTrace tr = newton_raphson([&g](double z) { return tof_bate_z(z, g); }, 0.0, g.t_norm, tol);
    if (!tr.converged()) return failed_trace(std::move(tr), g.t_norm);
    return bate_finish(s, std::move(tr), tol);
}

SolverOutcome bate_nr_bracketed(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    auto eval = [&g](double z) { return tof_bate_z(z, g); };
    const Bracket br = bracket_expand(eval, kValladoLower, kBateUpper, g.t_norm, -kStumpffZMin, kBateUpper);
    if (!br.ok) return failed(FailureReason::NotBracketed);

    // Preliminary search: a few halvings pull both ends into the well-behaved part of t(z).
    double lo = br.lo, hi = br.hi;
    for (int k = 0; k < kBatePreliminaryHalvings; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (detail::ordered_time(eval(mid)) <= g.t_norm)
            lo = mid;
        else
            hi = mid;
    }
    const double z0 = lo - 1.0 + std::sqrt(hi - lo + 1.0);
    IterationTrace tr = newton_raphson(eval, z0, g.t_norm, tol);
    if (!tr.converged()) return failed_trace(std::move(tr), g.t_norm);
    return bate_finish(s, std::move(tr), tol);
}

SolverOutcome bate_bisection(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    auto eval = [&g](double z) { return tof_bate_z(z, g); };
    double lo = kValladoLower;
    if (detail::ordered_time(eval(lo)) > g.t_norm) {
        // Lower the lower starter until the root is bracketed again.
        const Bracket br = bracket_expand(eval, lo, kBateUpper, g.t_norm, -kStumpffZMin, kBateUpper);
        if (!br.ok) return failed(FailureReason::NotBracketed);
        lo = br.lo;
    }
    IterationTrace tr = bisection(eval, lo, kBateUpper, g.t_norm, tol);
    if (!tr.converged()) return failed_trace(std::move(tr), g.t_norm);
    return bate_finish(s, std::move(tr), tol);
}

// ------------------------------------------------------------------ Simo

SolverOutcome simo_bisection(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    auto eval = [&g](double z) { return tof_simo_z(z, g); };
    constexpr double kUpper = kPi * kPi;
    double lo, hi;
    if (g.t_norm > parabolic_time(g)) {
        const double z0 = 0.25 * g.theta * g.theta;
        if (detail::ordered_time(eval(z0)) <= g.t_norm) {
            lo = z0;
            hi = kUpper;
        } else {
            lo = 0.0;
            hi = z0;
        }
    } else {
        const DomainSpec dom = simo_domain(g);
        const Bracket br = bracket_expand(eval, -1.0, 0.0, g.t_norm, dom.lower, kUpper);
        if (!br.ok) return failed(FailureReason::NotBracketed);
        lo = br.lo;
        hi = br.hi;
    }
    IterationTrace tr = bisection(eval, lo, hi, g.t_norm, tol);
    if (!tr.converged()) return failed_trace(std::move(tr), g.t_norm);

    const double z = tr.final_w;
    const StumpffPair st = stumpff(z);
    const double zc = z * st.c_val;
    const double residual = std::abs(time_at_simo_z(z, g).t - g.t_norm);
    return converged(s, regularized_elements(s, 1.0 - zc, zc * (2.0 - zc), zc), std::move(tr), residual, tol);
}

// ------------------------------------------------------------------ successive substitution

SolverOutcome gauss_ss(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    if (std::abs(g.r1n * g.r2n * g.sin_theta) <= tol.g_floor) return failed(FailureReason::GSingularity);
    const GaussContext ctx = make_gauss_context(g);

    IterationTrace tr;
    auto time_of = [&g](double x1) { return time_at_simo_z(simo_z_from_gauss_x1(x1), g); };
    double y = 1.0;
    double x1 = ctx.m - ctx.ell;
    tr.history.push_back({y, kNaN, kNaN, kNaN, kNaN});
    tr.final_w = y;
    try {
        for (;;) {
            if (tr.iterations >= tol.max_iter) {
                tr.status = TraceStatus::MaxIterations;
                return failed(FailureReason::MaxIterations, std::move(tr));
            }
            const GaussStep step = gauss_step(y, ctx);
            ++tr.iterations;
            const double dy = step.y_next - y;
            y = step.y_next;
            x1 = ctx.m / (y * y) - ctx.ell;
            tr.history.push_back({y, kNaN, kNaN, kNaN, kNaN});
            tr.final_w = y;
            if (std::abs(dy) <= tol.time_tol) break;
        }
    } catch (const LambertError &err) {
        tr.status = TraceStatus::Diverged;
        return failed(reason_from_error(err.code()), std::move(tr));
    }
    if (!(std::abs(x1) < 1.0)) {
        tr.status = TraceStatus::Diverged;
        return failed(FailureReason::DivergentSeries, std::move(tr));
    }
    // The fixed point settles y; the accepted root must also satisfy the time equation.
    const TofEvaluation te = time_of(x1);
    tr.final_t = te.t;
    tr.final_flag = te.flag;
    tr.status = TraceStatus::Converged;
    const double residual = std::abs(te.t - g.t_norm);

    // Lagrange coefficients from x1; d = r1 + r2 - 2 sqrt(r1 r2) cos(theta/2) (1 - 2 x1).
    const double sr1 = std::sqrt(g.r1n), sr2 = std::sqrt(g.r2n);
    const double sq4 = std::sin(0.25 * g.theta);
    const double d = (sr1 - sr2) * (sr1 - sr2) + 2.0 * sr1 * sr2 * (2.0 * sq4 * sq4 + 2.0 * x1 * g.cos_half);
    const double p = 2.0 * g.r1n * g.r2n * g.sin_half * g.sin_half / d;
    if (!(p > 0.0)) return failed(FailureReason::NonPhysicalY, std::move(tr), residual);
    const FgCoefficients fg{1.0 - d / g.r1n, g.r1n * g.r2n * g.sin_theta / std::sqrt(p), 1.0 - d / g.r2n};
    return converged(s, velocity_from_fg(fg, s.r1n, s.r2n, tol.g_floor), std::move(tr), residual, tol);
}

SolverOutcome battin_ss(const Setup &s, const ToleranceSpec &tol) {
    const TransferGeometry &g = s.g;
    const BattinContext ctx = make_battin_context(g);
    double x = g.t_norm > parabolic_time(g) ? ctx.l : 0.0;
    auto time_of = [&g](double xb) { return time_at_simo_z(simo_z_from_battin_x(xb), g); };

    IterationTrace tr;
    tr.history.push_back({x, kNaN, kNaN, kNaN, kNaN});
    tr.final_w = x;
    try {
        for (;;) {
            if (tr.iterations >= tol.max_iter) {
                tr.status = TraceStatus::MaxIterations;
                return failed(FailureReason::MaxIterations, std::move(tr));
            }
            const BattinStep step = battin_step(x, ctx);
            ++tr.iterations;
            const double dx = step.x_next - x;
            x = step.x_next;
            tr.history.push_back({x, kNaN, kNaN, kNaN, kNaN});
            tr.final_w = x;
            if (std::abs(dx) <= tol.time_tol) break;
        }
    } catch (const LambertError &err) {
        tr.status = TraceStatus::Diverged;
        return failed(reason_from_error(err.code()), std::move(tr));
    }
    const TofEvaluation te = time_of(x);
    tr.final_t = te.t;
    tr.final_flag = te.flag;
    tr.status = TraceStatus::Converged;
    const double residual = std::abs(te.t - g.t_norm);

    const double inv = 1.0 / (1.0 + x);
    return converged(s, regularized_elements(s, (1.0 - x) * inv, 4.0 * x * inv * inv, 2.0 * x * inv),
                     std::move(tr), residual, tol);
}

}  // namespace

// ------------------------------------------------------------------ starters

double izzo_starter(const TransferGeometry &g) {
    const double lam = g.lambda, lam2 = lam * lam;
    const double t = g.t_norm * izzo_time_factor(g);
    const double t00 = std::acos(lam) + lam * std::sqrt(1.0 - lam2);
    const double t1 = 2.0 / 3.0 * (1.0 - lam2 * lam);
    if (t >= t00) return std::pow(t00 / t, 2.0 / 3.0) - 1.0;
    if (t <= t1) return 2.5 * t1 / t * (t1 - t) / (1.0 - lam2 * lam2 * lam) + 1.0;
    return std::pow(t / t00, std::numbers::ln2 / std::log(t1 / t00)) - 1.0;
}

double gooding_starter(const TransferGeometry &g) {
    // Gooding's normalization doubles Izzo's: T_g = 2 T.
    constexpr double kC0 = 1.7, kC1 = 0.5, kC2 = 0.03;
    const double lam = g.lambda, lam2 = lam * lam;
    const double tin = 2.0 * g.t_norm * izzo_time_factor(g);
    const double t0 = 2.0 * (std::acos(lam) + lam * std::sqrt(1.0 - lam2));
    const double tdiff = tin - t0;
    if (tdiff <= 0.0) return t0 * tdiff / (-4.0 * tin);

    const double thr2 = std::atan2(1.0 - lam2, 2.0 * lam) / kPi;
    double x = -tdiff / (tdiff + 4.0);
    double w = x + kC0 * std::sqrt(2.0 * (1.0 - thr2));
    if (w < 0.0) x -= std::pow(-w, 1.0 / 16.0) * (x + std::sqrt(tdiff / (tdiff + 1.5 * t0)));
    w = 4.0 / (4.0 + tdiff);
    return x * (1.0 + x * (kC1 * w - kC2 * x * std::sqrt(w)));
}

// ------------------------------------------------------------------ dispatch

SolverOutcome solve(SolverId id, const LambertProblem &problem, const ToleranceSpec &tol) {
    try {
        const Setup s = make_setup(problem);
        switch (id) {
            case SolverId::LagrangeNR: return lagrange_nr(s, tol);
            case SolverId::GaussSS: return gauss_ss(s, tol);
            case SolverId::BateNR: return bate_nr(s, tol);
            case SolverId::BateNRBracketed: return bate_nr_bracketed(s, tol);
            case SolverId::BateBisection: return bate_bisection(s, tol);
            case SolverId::SimoBisection: return simo_bisection(s, tol);
            case SolverId::BattinSS: return battin_ss(s, tol);
            case SolverId::GoodingHalley: return gooding_halley(s, tol);
            case SolverId::IzzoHouseholder: return izzo_householder(s, tol);
            case SolverId::IzzoRegulaFalsi: return izzo_regula_falsi(s, tol);
        }
    } catch (const LambertError &err) {
        return failed(reason_from_error(err.code()));
    }
    return failed(FailureReason::NonReal);
}

std::vector<std::pair<SolverId, SolverOutcome>> solve_all(const LambertProblem &problem, const ToleranceSpec &tol) {
    std::vector<std::pair<SolverId, SolverOutcome>> out;
    out.reserve(kAllSolvers.size());
    for (SolverId id : kAllSolvers) out.emplace_back(id, solve(id, problem, tol));
    return out;
}

VelocityMethod velocity_method(SolverId id) noexcept {
    switch (id) {
        case SolverId::SimoBisection:
        case SolverId::BattinSS: return VelocityMethod::Elements;
        case SolverId::GaussSS:
        case SolverId::BateNR:
        case SolverId::BateNRBracketed:
        case SolverId::BateBisection: return VelocityMethod::LagrangeFg;
        default: return VelocityMethod::RadialTransversal;
    }
}

std::string_view to_string(SolverId id) noexcept {
    switch (id) {
        case SolverId::LagrangeNR: return "LagrangeNR";
        case SolverId::GaussSS: return "GaussSS";
        case SolverId::BateNR: return "BateNR";
        case SolverId::BateNRBracketed: return "BateNRBracketed";
        case SolverId::BateBisection: return "BateBisection";
        case SolverId::SimoBisection: return "SimoBisection";
        case SolverId::BattinSS: return "BattinSS";
        case SolverId::GoodingHalley: return "GoodingHalley";
        case SolverId::IzzoHouseholder: return "IzzoHouseholder";
        case SolverId::IzzoRegulaFalsi: return "IzzoRegulaFalsi";
    }
    return "Unknown";
}

std::optional<SolverId> parse_solver_id(std::string_view name) noexcept {
    for (SolverId id : kAllSolvers)
        if (to_string(id) == name) return id;
    return std::nullopt;
}

std::string_view to_string(FailureReason reason) noexcept {
    switch (reason) {
        case FailureReason::None: return "";
        case FailureReason::NonReal: return "NonReal";
        case FailureReason::NotBracketed: return "NotBracketed";
        case FailureReason::DivergentSeries: return "DivergentSeries";
        case FailureReason::NonPhysicalY: return "NonPhysicalY";
        case FailureReason::GSingularity: return "GSingularity";
        case FailureReason::MaxIterations: return "MaxIterations";
        case FailureReason::AsymptoteJump: return "AsymptoteJump";
        case FailureReason::ZeroDenominator: return "ZeroDenominator";
    }
    return "Unknown";
}

std::string_view to_string(OutcomeStatus status) noexcept {
    return status == OutcomeStatus::Converged ? "Converged" : "Failed";
}

}  // namespace lambert
