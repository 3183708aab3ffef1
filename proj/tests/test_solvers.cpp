#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "lambert/error.hpp"
#include "lambert/harness.hpp"
#include "lambert/oracle.hpp"
#include "lambert/solvers.hpp"
#include "support.hpp"

using namespace lambert;
using lambert::testing::uniform;

namespace {
constexpr double kPi = std::numbers::pi;

bool fg_bound(SolverId id) { return velocity_method(id) == VelocityMethod::LagrangeFg; }

bool bitwise_equal(const SolverOutcome &a, const SolverOutcome &b) {
    auto same = [](double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; };
    if (!(a.v1 == b.v1 && a.v2 == b.v2 && a.status == b.status && a.reason == b.reason &&
          a.iterations == b.iterations && same(a.time_residual, b.time_residual)))
        return false;
    if (a.trace.history.size() != b.trace.history.size()) return false;
    return std::memcmp(a.trace.history.data(), b.trace.history.data(), a.trace.history.size() * sizeof(TraceStep)) == 0;
}
}  // namespace

TEST_CASE("solve: Izzo on the quarter transfer") {
    const LambertProblem p({1, 0, 0}, {0, 2, 0}, 2 * kPi * 0.3, 1.0);
    const SolverOutcome out = solve(SolverId::IzzoHouseholder, p);
    REQUIRE(out.converged());
    CHECK(out.iterations <= 3);
    CHECK(out.time_residual <= 1e-12);
    const ValidationReport rep = validate_solution(p, out.v1, out.v2);
    CHECK(rep.position_residual <= 1e-11);
    CHECK(rep.direction_ok);
}

TEST_CASE("solve: Bate on the theta = pi Hohmann problem hits the g singularity") {
    const SolverOutcome out = solve(SolverId::BateNR, in_plane_problem(kPi, kPi * std::pow(1.5, 1.5), 2.0));
    CHECK(out.status == OutcomeStatus::Failed);
    CHECK(out.reason == FailureReason::GSingularity);
}

TEST_CASE("solve: Gauss on a long-way transfer is non-physical") {
    const SolverOutcome out = solve(SolverId::GaussSS, in_plane_problem(3 * kPi / 2, 2.0, 2.0));
    CHECK(out.status == OutcomeStatus::Failed);
    CHECK(out.reason == FailureReason::NonPhysicalY);
}

TEST_CASE("solve_all: a well-conditioned ellipse") {
    const LambertProblem p = in_plane_problem(1.2, 1.0, 2.0);
    const auto [ref1, ref2] = reference_solve(p);
    (void)ref2;
    const auto all = solve_all(p);
    REQUIRE(all.size() == kAllSolvers.size());
    int converged = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].first == kAllSolvers[i]);
        const SolverOutcome &out = all[i].second;
        if (!out.converged()) continue;
        ++converged;
        const double tol = all[i].first == SolverId::GaussSS ? 1e-1 : 1e-6;
        CHECK(testing::rel_err(out.v1, ref1) <= tol);
    }
    CHECK(converged >= 8);
}

TEST_CASE("solve_all: theta = pi fails exactly the f&g-bound pipelines") {
    const LambertProblem p = in_plane_problem(kPi, kPi * std::pow(1.5, 1.5), 2.0);
    for (const auto &[id, out] : solve_all(p)) {
        INFO(to_string(id));
        if (fg_bound(id)) {
            CHECK(out.reason == FailureReason::GSingularity);
        } else {
            CHECK(out.converged());
        }
    }
}

TEST_CASE("solve: degenerate geometry is rejected before any solver runs") {
    bool threw = false;
    try {
        solve_all(LambertProblem({1, 0, 0}, {2, 0, 0}, 1e-9, 1.0));
    } catch (const LambertError &e) {
        threw = e.code() == ErrorCode::DegenerateAngle;
    }
    CHECK(threw);
}

TEST_CASE("solvers bind the documented velocity methods") {
    CHECK(velocity_method(SolverId::SimoBisection) == VelocityMethod::Elements);
    CHECK(velocity_method(SolverId::BattinSS) == VelocityMethod::Elements);
    for (SolverId id : {SolverId::GaussSS, SolverId::BateNR, SolverId::BateNRBracketed, SolverId::BateBisection})
        CHECK(velocity_method(id) == VelocityMethod::LagrangeFg);
    for (SolverId id : {SolverId::LagrangeNR, SolverId::GoodingHalley, SolverId::IzzoHouseholder, SolverId::IzzoRegulaFalsi})
        CHECK(velocity_method(id) == VelocityMethod::RadialTransversal);
}

TEST_CASE("solver ids round-trip through their names") {
    std::set<std::string_view> names;
    for (SolverId id : kAllSolvers) {
        names.insert(to_string(id));
        CHECK(parse_solver_id(to_string(id)) == id);
    }
    CHECK(names.size() == kAllSolvers.size());
    CHECK_FALSE(parse_solver_id("Lambert").has_value());
}

TEST_CASE("Gooding runs exactly three Halley updates") {
    std::mt19937_64 rng(37);
    for (int k = 0; k < 200; ++k) {
        const LambertProblem p = in_plane_problem(uniform(rng, 0.05, 6.2), uniform(rng, 0.05, 6.2), 2.0);
        const SolverOutcome out = solve(SolverId::GoodingHalley, p);
        CHECK(out.iterations == 3);
        CHECK(out.trace.history.size() == 4);
    }
}

TEST_CASE("solve is deterministic bit for bit") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 50; ++k) {
        const LambertProblem p = testing::oriented_problem(uniform(rng, 0.05, 6.2), uniform(rng, 0.05, 6.2),
                                                           uniform(rng, 0.3, 4.0), testing::random_rotation(rng));
        for (SolverId id : kAllSolvers) CHECK(bitwise_equal(solve(id, p), solve(id, p)));
    }
}

TEST_CASE("converged outcomes meet the time tolerance and validate against propagation") {
    std::mt19937_64 rng(43);
    const ToleranceSpec tol;
    int converged = 0;
    for (int k = 0; k < 300; ++k) {
        const LambertProblem p = testing::oriented_problem(uniform(rng, 0.01, 2 * kPi - 0.01), uniform(rng, 0.01, 2 * kPi),
                                                           uniform(rng, 0.3, 4.0), testing::random_rotation(rng));
        for (const auto &[id, out] : solve_all(p, tol)) {
            if (!out.converged()) {
                CHECK(out.reason != FailureReason::None);
                continue;
            }
            ++converged;
            INFO(to_string(id));
            CHECK(out.time_residual <= tol.time_tol);
            CHECK(is_finite(out.v1));
            CHECK(is_finite(out.v2));
            CHECK(out.trace.history.size() == static_cast<size_t>(out.trace.iterations + 1));
            const ValidationReport rep = validate_solution(p, out.v1, out.v2);
            const double allowed = 100 * tol.time_tol * std::max(1.0, norm(out.v2)) + 4.0 * testing::ulp_sensitivity(p, out.v1);
            CHECK(rep.position_residual <= allowed);
            CHECK(rep.direction_ok);
        }
    }
    CHECK(converged > 2500);
}

TEST_CASE("bracketed Bate converges wherever plain Bate does, and more") {
    const GridSpec grid{50, 50};
    const auto cells = scan_region({SolverId::BateNR, SolverId::BateNRBracketed}, grid);
    int plain = 0, bracketed = 0, only_plain = 0;
    for (size_t i = 0; i < cells.size(); i += 2) {
        const bool a = cells[i].status == OutcomeStatus::Converged;
        const bool b = cells[i + 1].status == OutcomeStatus::Converged;
        plain += a;
        bracketed += b;
        only_plain += a && !b;
    }
    CHECK(only_plain == 0);
    CHECK(bracketed > plain);
}

TEST_CASE("starters land in the admissible domain") {
    std::mt19937_64 rng(47);
    for (int k = 0; k < 1000; ++k) {
        const auto [g, s] = build_geometry(in_plane_problem(uniform(rng, 0.01, 6.27), uniform(rng, 0.01, 6.28), 2.0));
        (void)s;
        CHECK(izzo_starter(g) > -1.0);
        CHECK(gooding_starter(g) > -1.0);
    }
}
