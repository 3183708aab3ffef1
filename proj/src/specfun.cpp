#include "lambert/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lambert/error.hpp"

namespace lambert {

namespace {

// Series for |z| < kStumpffSeriesLimit. Twelve terms leave a remainder below 1e-26; the
// closed forms lose digits to cancellation in S and in the derivatives for small |z|.
StumpffPair stumpff_series(double z) {
    constexpr int kTerms = 12;
    double c = 0.0, s = 0.0, dc = 0.0, ds = 0.0;
    // Horner in z; coefficients (-1)^k/(2k+2)! and (-1)^k/(2k+3)!.
    double fc[kTerms], fs[kTerms];
    double fact = 2.0;  // (2k+2)!
    for (int k = 0; k < kTerms; ++k) {
        if (k > 0) fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        fc[k] = sign / fact;
        fs[k] = sign / (fact * (2.0 * k + 3.0));
    }
    for (int k = kTerms - 1; k >= 0; --k) {
        c = c * z + fc[k];
        s = s * z + fs[k];
        if (k > 0) {
            dc = dc * z + k * fc[k];
            ds = ds * z + k * fs[k];
        }
    }
    return {c, s, dc, ds};
}

}  // namespace

StumpffPair stumpff(double z) {
    if (!std::isfinite(z) || z <= -kStumpffZMin || z >= kStumpffZMax)
        throw LambertError(ErrorCode::OutOfGuardRange, "Stumpff argument outside guard range");
    if (std::abs(z) < kStumpffSeriesLimit) return stumpff_series(z);

    double c, s;
    if (z > 0.0) {
        const double sz = std::sqrt(z);
        const double h = std::sin(0.5 * sz);
        c = 2.0 * h * h / z;
        s = (sz - std::sin(sz)) / (z * sz);
    } else {
        const double sz = std::sqrt(-z);
        const double h = std::sinh(0.5 * sz);
        c = -2.0 * h * h / z;
        s = (std::sinh(sz) - sz) / (-z * sz);
    }
    return {c, s, (1.0 - z * s - 2.0 * c) / (2.0 * z), (c - 3.0 * s) / (2.0 * z)};
}

StumpffPairExt stumpff_extended(long double z) {
    if (!std::isfinite(z) || z <= -kStumpffZMin || z >= kStumpffZMax)
        throw LambertError(ErrorCode::OutOfGuardRange, "Stumpff argument outside guard range");
    if (std::abs(z) < kStumpffSeriesLimit) {
        // Terms (-z)^k/(2k+2)! and (-z)^k/(2k+3)!; sixteen reach below the long double epsilon.
        long double c = 0.0L, s = 0.0L, tc = 0.5L, ts = 1.0L / 6.0L;
        for (int k = 0; k < 16; ++k) {
            c += tc;
            s += ts;
            tc *= -z / ((2.0L * k + 3.0L) * (2.0L * k + 4.0L));
            ts *= -z / ((2.0L * k + 4.0L) * (2.0L * k + 5.0L));
        }
        return {c, s};
    }
    if (z > 0.0L) {
        const long double sz = std::sqrt(z);
        const long double h = std::sin(0.5L * sz);
        return {2.0L * h * h / z, (sz - std::sin(sz)) / (z * sz)};
    }
    const long double sz = std::sqrt(-z);
    const long double h = std::sinh(0.5L * sz);
    return {-2.0L * h * h / z, (std::sinh(sz) - sz) / (-z * sz)};
}

SeriesResult gauss_2f1(double a, double b, double c, double x) {
    constexpr double kRelTol = 1e-14;
    constexpr int kMaxTerms = 500;
    if (!(std::abs(x) < 1.0))
        throw LambertError(ErrorCode::DivergentSeries, "2F1 argument outside the unit disc");

    double term = 1.0;
    double sum = 1.0;
    int n = 0;
    while (n + 1 < kMaxTerms) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        ++n;
        if (std::abs(term) <= kRelTol * std::abs(sum)) return {sum, n + 1, true};
    }
    return {sum, n + 1, false};
}

ContinuedFractionResult battin_xi(double x, int max_depth) {
    if (!(x > -1.0) || !std::isfinite(x))
        throw LambertError(ErrorCode::NoConvergence, "battin_xi requires finite x > -1");
    const double sq = std::sqrt(1.0 + x);
    const double d = 1.0 + sq;
    const double eta = x / (d * d);

    // Tail t = 1 + a4/(1 + a5/(1 + ...)), a_n = n^2/(4n^2 - 1) * eta.
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;
    double f = 1.0, cc = 1.0, dd = 0.0;
    int depth = 0;
    bool done = (eta == 0.0);
    for (int n = 4; !done; ++n) {
        if (depth >= max_depth) throw LambertError(ErrorCode::NoConvergence, "battin_xi depth exhausted");
        const double an = static_cast<double>(n) * n / (4.0 * n * n - 1.0) * eta;
        dd = 1.0 + an * dd;
        if (std::abs(dd) < kTiny) dd = kTiny;
        cc = 1.0 + an / cc;
        if (std::abs(cc) < kTiny) cc = kTiny;
        dd = 1.0 / dd;
        const double delta = cc * dd;
        f *= delta;
        ++depth;
        done = std::abs(delta - 1.0) < kEps;
    }
    const double inner = 5.0 + eta + (9.0 / 7.0) * eta / f;
    return {8.0 * d / (3.0 + 1.0 / inner), depth};
}

double largest_real_cubic_root(double a, double b, double c) {
    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    const double q3 = q * q * q;
    if (r * r < q3) {
        const double phi = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
        return -2.0 * std::sqrt(q) * std::cos((phi + 2.0 * std::numbers::pi) / 3.0) - a / 3.0;
    }
    const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q3)), r);
    const double small = (big == 0.0) ? 0.0 : q / big;
    return big + small - a / 3.0;
}

}  // namespace lambert
