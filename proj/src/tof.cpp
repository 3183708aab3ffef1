#include "lambert/tof.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lambert/error.hpp"
#include "lambert/specfun.hpp"

namespace lambert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNearParabolic = 1e-2;

// Derivatives of Q(S) = 4/3 2F1(3, 1; 5/2; S): Q_k = 4/3 (3)_k (1)_k / (5/2)_k 2F1(3+k, 1+k; 5/2+k; S).
constexpr double kQScale[4] = {4.0 / 3.0, 4.0 / 3.0 * 6.0 / 5.0, 4.0 / 3.0 * 96.0 / 35.0, 4.0 / 3.0 * 64.0 / 7.0};

struct SeriesTime {
    double t[4];
    bool ok;
    bool truncated;
};

// T = (eta^3 Q(S) + 4 lambda eta) / 2 with eta = y - lambda x, S = (1 - lambda - x eta) / 2,
// y = sqrt(1 - lambda^2 (1 - x^2)); T^(k) by Leibniz and the chain rule.
SeriesTime series_time(double x, double lam, int order) {
    SeriesTime out{{0.0, 0.0, 0.0, 0.0}, false, false};
    const double lam2 = lam * lam;
    const double y = std::sqrt(1.0 - lam2 + lam2 * x * x);
    const double eta = y - lam * x;
    const double s = 0.5 * (1.0 - lam - x * eta);
    if (!(std::abs(s) < 1.0)) return out;

    double q[4] = {0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k <= order; ++k) {
        // A sum truncated at the term cap is still used; only |S| >= 1 is a failure.
        const SeriesResult r = gauss_2f1(3.0 + k, 1.0 + k, 2.5 + k, s);
        out.truncated = out.truncated || !r.converged;
        q[k] = kQScale[k] * r.value;
    }
    const double eta3 = eta * eta * eta;
    out.t[0] = 0.5 * (eta3 * q[0] + 4.0 * lam * eta);
    out.ok = true;
    if (order < 1) return out;

    const double y1 = lam2 * x / y;
    const double y2 = lam2 * (1.0 - lam2) / (y * y * y);
    const double y3 = -3.0 * y2 * y1 / y;
    const double e1 = y1 - lam, e2 = y2, e3 = y3;
    const double s1 = -0.5 * (eta + x * e1);
    const double s2 = -0.5 * (2.0 * e1 + x * e2);
    const double s3 = -0.5 * (3.0 * e2 + x * e3);

    const double a0 = eta3;
    const double a1 = 3.0 * eta * eta * e1;
    const double b0 = q[0];
    const double b1 = q[1] * s1;
    out.t[1] = 0.5 * (a1 * b0 + a0 * b1 + 4.0 * lam * e1);
    if (order < 2) return out;

    const double a2 = 6.0 * eta * e1 * e1 + 3.0 * eta * eta * e2;
    const double b2 = q[2] * s1 * s1 + q[1] * s2;
    out.t[2] = 0.5 * (a2 * b0 + 2.0 * a1 * b1 + a0 * b2 + 4.0 * lam * e2);
    if (order < 3) return out;

    const double a3 = 6.0 * e1 * e1 * e1 + 18.0 * eta * e1 * e2 + 3.0 * eta * eta * e3;
    const double b3 = q[3] * s1 * s1 * s1 + 3.0 * q[2] * s1 * s2 + q[1] * s3;
    out.t[3] = 0.5 * (a3 * b0 + 3.0 * a2 * b1 + 3.0 * a1 * b2 + a0 * b3 + 4.0 * lam * e3);
    return out;
}

double time_factor(const TransferGeometry &g) noexcept { return std::sqrt(0.5 * g.s * g.s * g.s); }

TofEvaluation scaled(const double (&t)[4], int order, double factor) {
    TofEvaluation e;
    e.t = t[0] * factor;
    e.order = order;
    if (order >= 1) e.dt = t[1] * factor;
    if (order >= 2) e.d2t = t[2] * factor;
    if (order >= 3) e.d3t = t[3] * factor;
    return e;
}

}  // namespace

double parabolic_time(const TransferGeometry &g) noexcept {
    return std::numbers::sqrt2 / 3.0 * g.s * std::sqrt(g.s) * (1.0 - g.lambda * g.lambda * g.lambda);
}

double izzo_time_factor(const TransferGeometry &g) noexcept { return 1.0 / time_factor(g); }

// ---------------------------------------------------------------------------- Lagrange

TofEvaluation tof_lagrange_x(double x, const TransferGeometry &g) {
    if (std::isnan(x)) return TofEvaluation::outside(DomainFlag::NonReal);
    if (!(x > -1.0)) return TofEvaluation::outside(DomainFlag::BeyondAsymptote);
    const SeriesTime st = series_time(x, g.lambda, 1);
    if (!st.ok) return TofEvaluation::outside(DomainFlag::NonReal);
    TofEvaluation e = scaled(st.t, 1, time_factor(g));
    e.truncated = st.truncated;
    return e;
}

DomainSpec lagrange_domain(const TransferGeometry &) { return {-1.0, kInf, {-1.0}, false}; }

// ---------------------------------------------------------------------------- Lancaster

double lancaster_psi(double x, const TransferGeometry &g) {
    const double lam = g.lambda, lam2 = lam * lam;
    const double e = (x - 1.0) * (x + 1.0);
    const double y = std::sqrt(1.0 + lam2 * e);
    const double rt = std::sqrt(std::abs(e));
    const double ylx = (lam * x > 0.0) ? (1.0 - lam2) / (y + lam * x) : y - lam * x;
    if (e < 0.0) {
        const double cosarg = (x * lam < 0.0) ? (x * x + lam2 * e) / (x * y + lam * e) : x * y - lam * e;
        return std::atan2(rt * ylx, cosarg);
    }
    return std::asinh(rt * ylx);
}

TofEvaluation tof_lancaster_x(double x, const TransferGeometry &g, int order) {
    if (std::isnan(x)) return TofEvaluation::outside(DomainFlag::NonReal);
    if (!(x > -1.0)) return TofEvaluation::outside(DomainFlag::BeyondAsymptote);
    const double factor = time_factor(g);

    if (std::abs(x - 1.0) < kNearParabolic) {
        const SeriesTime st = series_time(x, g.lambda, order);
        if (!st.ok) return TofEvaluation::outside(DomainFlag::NonReal);
        return scaled(st.t, order, factor);
    }

    const double lam = g.lambda, lam2 = lam * lam;
    const double e = (x - 1.0) * (x + 1.0);
    const double y = std::sqrt(1.0 + lam2 * e);
    const double rt = std::sqrt(std::abs(e));
    const double psi = lancaster_psi(x, g);
    const double xly = (lam * x > 0.0) ? (1.0 - lam2) * ((1.0 + lam2) * x * x - lam2) / (x + lam * y) : x - lam * y;

    double t[4] = {(xly - psi / rt) / e, 0.0, 0.0, 0.0};
    const double omx2 = -e;
    const double lam3 = lam2 * lam;
    if (order >= 1) t[1] = (3.0 * t[0] * x - 2.0 + 2.0 * lam3 * x / y) / omx2;
    if (order >= 2) t[2] = (3.0 * t[0] + 5.0 * x * t[1] + 2.0 * (1.0 - lam2) * lam3 / (y * y * y)) / omx2;
    if (order >= 3) {
        const double y5 = y * y * y * y * y;
        t[3] = (7.0 * x * t[2] + 8.0 * t[1] - 6.0 * (1.0 - lam2) * lam3 * lam2 * x / y5) / omx2;
    }
    return scaled(t, order, factor);
}

DomainSpec lancaster_domain(const TransferGeometry &) { return {-1.0, kInf, {-1.0}, false}; }

double simo_z_from_lancaster_x(double x, const TransferGeometry &g) {
    const double psi = lancaster_psi(x, g);
    return x < 1.0 ? psi * psi : -psi * psi;
}

// ---------------------------------------------------------------------------- Bate

namespace {

constexpr double kBateAsymptote = 4.0 * kPi * kPi;

// A = sin(theta) sqrt(r1 r2 / (1 - cos(theta))), written without the 0/0 at small theta.
double bate_a(const TransferGeometry &g) noexcept {
    return std::numbers::sqrt2 * std::sqrt(g.r1n * g.r2n) * g.cos_half;
}

double bate_y(double z, const StumpffPair &st, double a, const TransferGeometry &g) {
    return g.r1n + g.r2n + a * (z * st.s_val - 1.0) / std::sqrt(st.c_val);
}

}  // namespace

TofEvaluation tof_bate_z(double z, const TransferGeometry &g) {
    if (std::isnan(z)) return TofEvaluation::outside(DomainFlag::NonReal);
    if (z >= kBateAsymptote) return TofEvaluation::outside(DomainFlag::BeyondAsymptote);
    if (z <= -kStumpffZMin) return TofEvaluation::outside(DomainFlag::BelowLowerLimit);

    const StumpffPair st = stumpff(z);
    const double a = bate_a(g);
    const double c = st.c_val, s = st.s_val;
    const double sqc = std::sqrt(c);
    const double y = bate_y(z, st, a, g);
    if (y < 0.0) return TofEvaluation::outside(DomainFlag::NonReal);
    if (y == 0.0) return TofEvaluation::outside(DomainFlag::BelowLowerLimit);

    const double yc = y / c;
    const double sqyc = std::sqrt(yc);
    const double sqy = std::sqrt(y);
    TofEvaluation e;
    e.t = yc * sqyc * s + a * sqy;
    const double dy = a * ((s + z * st.ds_dz) * sqc - (z * s - 1.0) * st.dc_dz / (2.0 * sqc)) / c;
    e.dt = 1.5 * sqyc * (dy * c - y * st.dc_dz) / (c * c) * s + yc * sqyc * st.ds_dz + a * dy / (2.0 * sqy);
    e.order = 1;
    return e;
}

BateAuxiliary bate_auxiliary(double z, const TransferGeometry &g) {
    const double a = bate_a(g);
    return {a, bate_y(z, stumpff(z), a, g)};
}

double bate_real_wall(const TransferGeometry &g) {
    if (!(g.cos_half > 0.0)) return -kInf;
    const double a = bate_a(g);
    auto y_at = [&](double z) { return bate_y(z, stumpff(z), a, g); };
    // y(0) >= 0; walk down until y changes sign, then bisect.
    double hi = 0.0, lo = -1.0;
    while (y_at(lo) >= 0.0) {
        hi = lo;
        lo *= 2.0;
        if (lo <= -kStumpffZMin) return -kStumpffZMin;
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (y_at(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

DomainSpec bate_domain(const TransferGeometry &g) {
    const double wall = bate_real_wall(g);
    return {std::isfinite(wall) ? wall : -kStumpffZMin, kBateAsymptote, {kBateAsymptote}, true};
}

// ---------------------------------------------------------------------------- Simo

namespace {

constexpr double kSimoAsymptote = kPi * kPi;

}  // namespace

TofEvaluation tof_simo_z(double z, const TransferGeometry &g) {
    if (std::isnan(z)) return TofEvaluation::outside(DomainFlag::NonReal);
    if (z >= kSimoAsymptote) return TofEvaluation::outside(DomainFlag::BeyondAsymptote);
    if (4.0 * z <= -kStumpffZMin) return TofEvaluation::outside(DomainFlag::BelowLowerLimit);

    const StumpffPair s1 = stumpff(z);
    const StumpffPair s4 = stumpff(4.0 * z);
    const double zc = z * s1.c_val;  // 1 - cos(psi), exact near 0
    const double cp = 1.0 - zc;
    const double u1 = 1.0 - z * s1.s_val;  // sin(psi)/psi
    const double u14 = 1.0 - 4.0 * z * s4.s_val;
    const double sr1 = std::sqrt(g.r1n), sr2 = std::sqrt(g.r2n);
    const double srr = sr1 * sr2;
    const double k = srr * g.cos_half;
    const double sq4 = std::sin(0.25 * g.theta);
    const double d = (sr1 - sr2) * (sr1 - sr2) + 2.0 * srr * (2.0 * sq4 * sq4 + g.cos_half * zc);
    if (d < 0.0) return TofEvaluation::outside(DomainFlag::NonReal);
    if (d == 0.0) return TofEvaluation::outside(DomainFlag::BelowLowerLimit);

    const double w = sr2 * g.cos_half - sr1 * cp;
    const double num2 = w * w + g.r2n * g.sin_half * g.sin_half;
    const double u13 = u1 * u1 * u1;
    TofEvaluation e;
    e.t = std::sqrt(2.0 * d) *
          (g.r1n * (1.0 + u14) / (2.0 * u1) + num2 * 2.0 * s4.s_val / u13 + (k - g.r1n * cp));
    return e;
}

double simo_lower_wall(const TransferGeometry &g) noexcept {
    if (!(g.cos_half > 0.0)) return -kInf;
    const double k = std::sqrt(g.r1n * g.r2n) * g.cos_half;
    const double f = std::acosh((g.r1n + g.r2n) / (2.0 * k));
    return -f * f;
}

DomainSpec simo_domain(const TransferGeometry &g) {
    const double wall = simo_lower_wall(g);
    return {std::isfinite(wall) ? wall : -0.25 * kStumpffZMin, kSimoAsymptote, {kSimoAsymptote}, true};
}

double simo_z_from_gauss_x1(double x1) noexcept {
    if (x1 >= 0.0) {
        const double psi = 2.0 * std::asin(std::sqrt(x1));
        return psi * psi;
    }
    const double psi = 2.0 * std::asinh(std::sqrt(-x1));
    return -psi * psi;
}

double simo_z_from_battin_x(double x) noexcept {
    if (x >= 0.0) {
        const double psi = 2.0 * std::atan(std::sqrt(x));
        return psi * psi;
    }
    const double psi = 2.0 * std::atanh(std::sqrt(-x));
    return -psi * psi;
}

double lancaster_x_from_simo_z(double z, const TransferGeometry &g) {
    // psi = (alpha - beta) / 2 with sin(beta/2) = lambda sin(alpha/2); x = cos(alpha/2).
    const double lam = g.lambda;
    const double psi = std::sqrt(std::abs(z));
    if (z >= 0.0) {
        const double half_beta = std::atan2(lam * std::sin(psi), 1.0 - lam * std::cos(psi));
        return std::cos(psi + half_beta);
    }
    const double half_beta = std::atanh(lam * std::sinh(psi) / (1.0 - lam * std::cosh(psi)));
    return std::cosh(psi + half_beta);
}

// ---------------------------------------------------------------------------- Gauss

GaussContext make_gauss_context(const TransferGeometry &g) noexcept {
    const double k = std::sqrt(g.r1n * g.r2n) * g.cos_half;
    const double two_k = 2.0 * k;
    return {(g.r1n + g.r2n) / (4.0 * k) - 0.5, g.t_norm * g.t_norm / (two_k * two_k * two_k), g.sin_theta};
}

GaussStep gauss_step(double y, const GaussContext &ctx) {
    if (ctx.sin_theta < 0.0)
        throw LambertError(ErrorCode::NonPhysicalY, "negative triangle area: sector-to-triangle ratio below zero");
    if (!(y > 0.0)) throw LambertError(ErrorCode::NonPhysicalY, "sector-to-triangle ratio must be positive");

    const double x1 = ctx.m / (y * y) - ctx.ell;
    if (!(std::abs(x1) < 1.0)) throw LambertError(ErrorCode::DivergentSeries, "Moulton series argument outside |x| < 1");

    // X = 4/3 (1 + 6/5 x + 48/35 x^2 + ...), c_n = c_{n-1} (2n + 4) / (2n + 3).
    constexpr int kMaxTerms = 100000;
    double term = 1.0, sum = 1.0;
    int n = 0;
    while (true) {
        ++n;
        term *= x1 * (2.0 * n + 4.0) / (2.0 * n + 3.0);
        sum += term;
        if (std::abs(term) < 1e-15 * std::abs(sum)) break;
        if (n >= kMaxTerms) throw LambertError(ErrorCode::DivergentSeries, "Moulton series did not settle");
    }
    const double big_x = 4.0 / 3.0 * sum;
    const double y_next = 1.0 + big_x * (ctx.ell + x1);
    if (!(y_next > 0.0)) throw LambertError(ErrorCode::NonPhysicalY, "sector-to-triangle ratio became negative");
    return {y_next, x1, big_x, n + 1};
}

GaussStep gauss_step(double y, const TransferGeometry &g) { return gauss_step(y, make_gauss_context(g)); }

// ---------------------------------------------------------------------------- Battin

BattinContext make_battin_context(const TransferGeometry &g) noexcept {
    const double lp = 1.0 + g.lambda;
    const double ratio = (1.0 - g.lambda) / lp;
    const double lp2 = lp * lp;
    return {ratio * ratio, 8.0 * g.t_norm * g.t_norm / (g.s * g.s * g.s * lp2 * lp2 * lp2)};
}

BattinStep battin_step(double x, const BattinContext &ctx) {
    if (!(x > -1.0)) throw LambertError(ErrorCode::NegativeRadicand, "sqrt(1 + x) with x <= -1");
    const double l = ctx.l, m = ctx.m;
    const ContinuedFractionResult xi = battin_xi(x);
    const double den = (1.0 + 2.0 * x + l) * (4.0 * x + xi.value * (3.0 + x));
    const double h1 = (l + x) * (l + x) * (1.0 + 3.0 * x + xi.value) / den;
    const double h2 = m * (x - l + xi.value) / den;
    const double onep = 1.0 + h1;
    const double b = 27.0 * h2 / (4.0 * onep * onep * onep);
    if (!(b + 1.0 >= 0.0)) throw LambertError(ErrorCode::NegativeRadicand, "cubic discriminant term 1 + B < 0");

    // Largest root of y^3 - (1 + h1) y^2 - h2 = 0 in trigonometric/hyperbolic form.
    const double sb = std::sqrt(b + 1.0);
    const double zz = b >= 0.0 ? 2.0 * std::cosh(std::acosh(sb) / 3.0) : 2.0 * std::cos(std::acos(sb) / 3.0);
    const double y = 2.0 / 3.0 * onep * (sb / zz + 1.0);
    const double half = 0.5 * (1.0 - l);
    const double x_next = std::sqrt(half * half + m / (y * y)) - 0.5 * (1.0 + l);
    return {x_next, h1, h2, b, y, xi.depth};
}

BattinStep battin_step(double x, const TransferGeometry &g) { return battin_step(x, make_battin_context(g)); }

}  // namespace lambert
