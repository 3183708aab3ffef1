#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lambert/error.hpp"
#include "lambert/specfun.hpp"
#include "support.hpp"

using namespace lambert;

namespace {
constexpr double kPi = std::numbers::pi;

ErrorCode error_of(auto &&fn) {
    try {
        fn();
    } catch (const LambertError &e) {
        return e.code();
    }
    FAIL("expected a LambertError");
    return ErrorCode::IoError;
}
}  // namespace

TEST_CASE("stumpff: reference values") {
    const StumpffPair z0 = stumpff(0.0);
    CHECK(z0.c_val == 0.5);
    CHECK(z0.s_val == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
    CHECK(z0.dc_dz == doctest::Approx(-1.0 / 24.0).epsilon(1e-15));
    CHECK(z0.ds_dz == doctest::Approx(-1.0 / 120.0).epsilon(1e-15));

    CHECK(stumpff(kPi * kPi).c_val == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-15));
    CHECK(stumpff(4 * kPi * kPi).s_val == doctest::Approx(1.0 / (4 * kPi * kPi)).epsilon(1e-14));
}

TEST_CASE("stumpff: series branch within 1e-15 absolute of a long-double oracle") {
    for (int k = -100; k <= 100; ++k) {
        const double z = kStumpffSeriesLimit * k / 100.0 * 0.999;
        const StumpffPair sp = stumpff(z);
        const testing::StumpffLd o = testing::stumpff_ld(z);
        CHECK(std::abs(sp.c_val - static_cast<double>(o.c)) <= 1e-15);
        CHECK(std::abs(sp.s_val - static_cast<double>(o.s)) <= 1e-15);
    }
}

TEST_CASE("stumpff: series and closed form agree at the crossover") {
    for (double edge : {kStumpffSeriesLimit, -kStumpffSeriesLimit}) {
        const StumpffPair inside = stumpff(std::nextafter(edge, 0.0));
        const StumpffPair outside = stumpff(std::nextafter(edge, 2 * edge));
        CHECK(std::abs(inside.c_val - outside.c_val) <= 1e-13);
        CHECK(std::abs(inside.s_val - outside.s_val) <= 1e-13);
        CHECK(std::abs(inside.dc_dz - outside.dc_dz) <= 1e-13);
        CHECK(std::abs(inside.ds_dz - outside.ds_dz) <= 1e-13);
    }
}

TEST_CASE("stumpff: derivatives match central differences") {
    for (double z : {-300.0, -40.0, -3.0, -0.5, -0.02, -0.005, 0.003, 0.015, 0.7, 5.0, 20.0, 35.0}) {
        const double h = 1e-5 * std::max(1.0, std::abs(z));
        const StumpffPair sp = stumpff(z);
        const StumpffPair up = stumpff(z + h), dn = stumpff(z - h);
        const double fd_c = (up.c_val - dn.c_val) / (2 * h);
        const double fd_s = (up.s_val - dn.s_val) / (2 * h);
        CHECK(std::abs(fd_c - sp.dc_dz) <= 1e-8 * std::max(1.0, std::abs(sp.dc_dz)));
        CHECK(std::abs(fd_s - sp.ds_dz) <= 1e-8 * std::max(1.0, std::abs(sp.ds_dz)));
    }
}

TEST_CASE("stumpff: derivative identities on a log grid") {
    const testing::PropertyResult res = testing::stumpff_identities();
    INFO(res.detail);
    CHECK(res.ok);
    CHECK(res.checked == 802);
}

TEST_CASE("stumpff: guard range") {
    CHECK(error_of([] { stumpff(std::nan("")); }) == ErrorCode::OutOfGuardRange);
    CHECK(error_of([] { stumpff(1e6); }) == ErrorCode::OutOfGuardRange);
    CHECK(error_of([] { stumpff(-1e6); }) == ErrorCode::OutOfGuardRange);
    CHECK(error_of([] { stumpff(INFINITY); }) == ErrorCode::OutOfGuardRange);
}

TEST_CASE("gauss_2f1: empty series, log identity and divergence") {
    const SeriesResult zero = gauss_2f1(3.0, 1.0, 2.5, 0.0);
    CHECK(zero.value == 1.0);
    CHECK(zero.converged);

    const double x = 0.5;
    const SeriesResult r = gauss_2f1(1.0, 1.0, 2.0, x);
    CHECK(r.value == doctest::Approx(-std::log1p(-x) / x).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(r.terms > 10);
    CHECK(r.converged);

    CHECK(error_of([] { gauss_2f1(1.0, 1.0, 2.0, 1.2); }) == ErrorCode::DivergentSeries);
    CHECK(error_of([] { gauss_2f1(1.0, 1.0, 2.0, -1.0); }) == ErrorCode::DivergentSeries);
}

TEST_CASE("gauss_2f1: term cap is reported, not hidden") {
    const SeriesResult r = gauss_2f1(3.0, 1.0, 2.5, 0.999);
    CHECK(r.terms == 500);
    CHECK_FALSE(r.converged);
}

TEST_CASE("battin_xi: value at zero against a deep bottom-up truncation") {
    const ContinuedFractionResult r = battin_xi(0.0);
    CHECK(r.value == doctest::Approx(testing::battin_xi_bottom_up(0.0, 500)).epsilon(1e-14));
    CHECK(r.value == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("battin_xi: agrees with bottom-up evaluation across the admissible range") {
    for (double x : {-0.99, -0.7, -0.3, 0.1, 0.5, 2.0, 10.0, 100.0}) {
        const ContinuedFractionResult r = battin_xi(x);
        CHECK(r.value == doctest::Approx(testing::battin_xi_bottom_up(x, 500)).epsilon(1e-14));
        CHECK(r.depth >= 1);
        CHECK(r.depth <= 200);
        CHECK(battin_xi(x).depth == r.depth);
    }
}

TEST_CASE("battin_xi: linear near zero") {
    const double h = 1e-4;
    const double slope = (battin_xi(h).value - battin_xi(-h).value) / (2 * h);
    const double xi0 = battin_xi(0.0).value;
    for (double x : {1e-6, -1e-6, 3e-7, -5e-7}) {
        const double lin = xi0 + slope * x;
        CHECK(std::abs(battin_xi(x).value - lin) <= 1e-11);
    }
}

TEST_CASE("battin_xi: depth exhaustion") {
    CHECK(error_of([] { battin_xi(0.9, 2); }) == ErrorCode::NoConvergence);
    CHECK(error_of([] { battin_xi(-1.5); }) == ErrorCode::NoConvergence);
}

TEST_CASE("largest_real_cubic_root") {
    // (y + 1)(y - 0.5)(y - 2) = y^3 - 1.5 y^2 - 1.5 y + 1
    CHECK(largest_real_cubic_root(-1.5, -1.5, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    // one real root: (y - 3)(y^2 + 1) = y^3 - 3 y^2 + y - 3
    CHECK(largest_real_cubic_root(-3.0, 1.0, -3.0) == doctest::Approx(3.0).epsilon(1e-14));
    // triple root at 1: (y - 1)^3
    CHECK(largest_real_cubic_root(-3.0, 3.0, -1.0) == doctest::Approx(1.0).epsilon(1e-5));
}
