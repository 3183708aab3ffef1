// Generic scalar iteration schemes over a transfer-time evaluation w -> TofEvaluation.
//
// The schemes are templates so that solver pipelines can pass lambdas without type
// erasure on the hot path.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

#include "lambert/evaluation.hpp"

namespace lambert {

enum class TraceStatus {
    Converged,
    MaxIterations,
    Diverged,            ///< iterate left the admissible domain
    NonRealEncountered,  ///< evaluation hit the imaginary region of its formulation
    NotBracketed,
    ZeroDenominator,
};

std::string_view to_string(TraceStatus status) noexcept;

struct TraceStep {
    double w;
    double t;
    double dt;
    double d2t;
    double d3t;
};

/** @brief Full record of one iteration run; history.size() == iterations + 1. */
struct IterationTrace {
    int iterations{0};
    std::vector<TraceStep> history;
    TraceStatus status{TraceStatus::MaxIterations};
    double final_w{std::numeric_limits<double>::quiet_NaN()};
    double final_t{std::numeric_limits<double>::quiet_NaN()};
    DomainFlag final_flag{DomainFlag::InDomain};

    bool converged() const noexcept { return status == TraceStatus::Converged; }
};

struct ToleranceSpec {
    double time_tol{1e-12};       ///< absolute, normalized time units
    int max_iter{100};            ///< Newton, Halley, Householder, regula falsi, substitution
    int bisection_max_iter{200};  ///< bisection only
    double g_floor{1e-12};        ///< f&g singularity threshold
};

namespace detail {

inline void record(IterationTrace &tr, double w, const TofEvaluation &e) {
    tr.history.push_back({w, e.t, e.dt, e.d2t, e.d3t});
    tr.final_w = w;
    tr.final_t = e.t;
    tr.final_flag = e.flag;
}

inline TraceStatus status_for(DomainFlag f) noexcept {
    return f == DomainFlag::NonReal ? TraceStatus::NonRealEncountered : TraceStatus::Diverged;
}

// Drives a single-point update rule. Step returns the next w or NaN for a vanishing denominator.
template <class Eval, class Step>
IterationTrace single_point(Eval &&eval, double w0, double tof, const ToleranceSpec &tol, Step &&step) {
    IterationTrace tr;
    tr.history.reserve(8);
    double w = w0;
    TofEvaluation e = eval(w);
    record(tr, w, e);
    for (;;) {
        if (!e.in_domain()) {
            tr.status = status_for(e.flag);
            return tr;
        }
        if (std::abs(e.t - tof) <= tol.time_tol) {
            tr.status = TraceStatus::Converged;
            return tr;
        }
        if (tr.iterations >= tol.max_iter) {
            tr.status = TraceStatus::MaxIterations;
            return tr;
        }
        const double next = step(w, e);
        if (!std::isfinite(next)) {
            tr.status = TraceStatus::ZeroDenominator;
            return tr;
        }
        w = next;
        e = eval(w);
        ++tr.iterations;
        record(tr, w, e);
    }
}

// Position of an evaluation relative to the target for bracketing purposes.
// Imaginary or below-wall points act as t = -inf, points past the asymptote as t = +inf.
inline double ordered_time(const TofEvaluation &e) noexcept {
    switch (e.flag) {
        case DomainFlag::InDomain: return e.t;
        case DomainFlag::BeyondAsymptote: return std::numeric_limits<double>::infinity();
        default: return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace detail

/// First-order Householder (Newton-Raphson): w <- w - (t - TOF) / t'.
template <class Eval>
IterationTrace newton_raphson(Eval &&eval, double w0, double tof, const ToleranceSpec &tol) {
    return detail::single_point(eval, w0, tof, tol, [tof](double w, const TofEvaluation &e) {
        if (e.dt == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return w - (e.t - tof) / e.dt;
    });
}

/// Halley: with T = TOF - t, w <- w + T t' / (t'^2 + T t''/2).
template <class Eval>
IterationTrace halley(Eval &&eval, double w0, double tof, const ToleranceSpec &tol) {
    return detail::single_point(eval, w0, tof, tol, [tof](double w, const TofEvaluation &e) {
        const double big_t = tof - e.t;
        const double den = e.dt * e.dt + 0.5 * big_t * e.d2t;
        if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return w + big_t * e.dt / den;
    });
}

/// Third-order Householder with d = t - TOF:
/// w <- w - d (t'^2 - d t''/2) / (t' (t'^2 - d t'') + t''' d^2 / 6).
template <class Eval>
IterationTrace householder3(Eval &&eval, double w0, double tof, const ToleranceSpec &tol) {
    return detail::single_point(eval, w0, tof, tol, [tof](double w, const TofEvaluation &e) {
        const double d = e.t - tof;
        const double dt2 = e.dt * e.dt;
        const double den = e.dt * (dt2 - d * e.d2t) + e.d3t * d * d / 6.0;
        if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return w - d * (dt2 - 0.5 * d * e.d2t) / den;
    });
}

/**
 * @brief Secant-type regula falsi that always discards the older point.
 *
 * history[0] holds the second starter; the first starter is consumed by the first update.
 */
template <class Eval>
IterationTrace regula_falsi(Eval &&eval, double w1, double w2, double tof, const ToleranceSpec &tol) {
    IterationTrace tr;
    tr.history.reserve(8);
    TofEvaluation e1 = eval(w1);
    TofEvaluation e2 = eval(w2);
    detail::record(tr, w2, e2);
    if (!e1.in_domain()) {
        tr.status = detail::status_for(e1.flag);
        return tr;
    }
    for (;;) {
        if (!e2.in_domain()) {
            tr.status = detail::status_for(e2.flag);
            return tr;
        }
        const double r2 = e2.t - tof;
        if (std::abs(r2) <= tol.time_tol) {
            tr.status = TraceStatus::Converged;
            return tr;
        }
        if (tr.iterations >= tol.max_iter) {
            tr.status = TraceStatus::MaxIterations;
            return tr;
        }
        const double r1 = e1.t - tof;
        if (r2 == r1) {
            tr.status = TraceStatus::ZeroDenominator;
            return tr;
        }
        const double w = (w1 * r2 - r1 * w2) / (r2 - r1);
        w1 = w2;
        e1 = e2;
        w2 = w;
        e2 = eval(w2);
        ++tr.iterations;
        detail::record(tr, w2, e2);
    }
}

/**
 * @brief Bisection for an eval increasing in w.
 *
 * The lower bound moves when t <= TOF, the upper bound when t > TOF. Terminates
 * Converged on |t - TOF| <= time_tol or when the bracket shrinks below a few ulps.
 * history[0] is the entry evaluation at lo; each midpoint adds one entry.
 */
template <class Eval>
IterationTrace bisection(Eval &&eval, double lo, double hi, double tof, const ToleranceSpec &tol) {
    IterationTrace tr;
    tr.history.reserve(64);
    const TofEvaluation elo = eval(lo);
    const TofEvaluation ehi = eval(hi);
    detail::record(tr, lo, elo);
    if (!(lo < hi) || detail::ordered_time(elo) > tof || detail::ordered_time(ehi) < tof) {
        tr.status = TraceStatus::NotBracketed;
        return tr;
    }
    constexpr double kUlpFactor = 4.0 * std::numeric_limits<double>::epsilon();
    while (tr.iterations < tol.bisection_max_iter) {
        const double mid = 0.5 * (lo + hi);
        const TofEvaluation e = eval(mid);
        ++tr.iterations;
        detail::record(tr, mid, e);
        if (e.in_domain() && std::abs(e.t - tof) <= tol.time_tol) {
            tr.status = TraceStatus::Converged;
            return tr;
        }
        if (detail::ordered_time(e) <= tof)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= kUlpFactor * std::max({std::abs(lo), std::abs(hi), 1.0})) {
            tr.status = e.in_domain() ? TraceStatus::Converged : detail::status_for(e.flag);
            return tr;
        }
    }
    tr.status = TraceStatus::MaxIterations;
    return tr;
}

struct Bracket {
    double lo;
    double hi;
    double starter;  ///< geometric mean of the bracket on the axis shifted so lo maps to 1
    int evaluations;
    bool ok;         ///< false: the domain wall was reached without bracketing
};

/**
 * @brief Expands [seed_lo, seed_hi] geometrically until t(lo) <= TOF <= t(hi).
 *
 * Each violated bound moves to twice its distance from the other bound. Bounds never
 * pass the walls; when a step would, it halves the remaining gap instead, and a bound
 * that sits on its wall without bracketing ends the search with ok = false.
 */
template <class Eval>
Bracket bracket_expand(Eval &&eval, double seed_lo, double seed_hi, double tof, double wall_lo,
                       double wall_hi, int max_steps = 200) {
    double lo = seed_lo, hi = seed_hi;
    int evals = 0;
    auto approach = [](double from, double target, double wall) {
        const bool down = target < from;
        if (down ? target > wall : target < wall) return target;
        const double half = from + 0.5 * (wall - from);
        return std::abs(half - wall) <= 1e-12 * std::max(1.0, std::abs(wall)) ? wall : half;
    };
    auto at_wall = [](double v, double wall) { return v == wall; };

    double tlo = detail::ordered_time(eval(lo));
    double thi = detail::ordered_time(eval(hi));
    evals += 2;
    for (int step = 0; step < max_steps; ++step) {
        const bool lo_ok = tlo <= tof;
        const bool hi_ok = thi >= tof;
        if (lo_ok && hi_ok) {
            return {lo, hi, lo - 1.0 + std::sqrt(hi - lo + 1.0), evals, true};
        }
        if (!lo_ok) {
            if (at_wall(lo, wall_lo)) break;
            const double width = hi - lo;
            hi = lo;
            thi = tlo;
            lo = approach(lo, lo - 2.0 * width, wall_lo);
            tlo = detail::ordered_time(eval(lo));
            ++evals;
        } else {
            if (at_wall(hi, wall_hi)) break;
            const double width = hi - lo;
            lo = hi;
            tlo = thi;
            hi = approach(hi, hi + 2.0 * width, wall_hi);
            thi = detail::ordered_time(eval(hi));
            ++evals;
        }
    }
    return {lo, hi, std::numeric_limits<double>::quiet_NaN(), evals, false};
}

}  // namespace lambert
