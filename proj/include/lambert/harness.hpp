// Region-of-applicability scan, Monte-Carlo timing benchmark and CSV output.
#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "lambert/geometry.hpp"
#include "lambert/solvers.hpp"

namespace lambert {

struct GridSpec {
    int theta_steps{200};
    int tof_steps{200};
    double theta_lo{0.0};
    double theta_hi{2.0 * std::numbers::pi};
    double tof_lo{0.0};
    double tof_hi{2.0 * std::numbers::pi};
    double radius_ratio{2.0};
};

/// Interior grid points lo + i (hi - lo) / steps for i = 1 .. steps - 1 (endpoints excluded).
std::vector<double> grid_points(double lo, double hi, int steps);

/// In-plane problem with r1 = (1, 0, 0), r2 = ratio (cos theta, sin theta, 0), mu = 1.
LambertProblem in_plane_problem(double theta, double tof, double radius_ratio);

/// True when the flight time exceeds the parabolic time of the cell's geometry.
bool cell_is_elliptic(double theta, double tof, double radius_ratio);

struct CellResult {
    double theta{0.0};
    double tof{0.0};
    SolverId solver{SolverId::LagrangeNR};
    OutcomeStatus status{OutcomeStatus::Failed};
    FailureReason reason{FailureReason::None};
    int iterations{0};
    double velocity_error{0.0};  ///< |v1 - v1_ref| / |v1_ref|, NaN unless converged
    std::int64_t wall_time_ns{0};
};

/**
 * @brief Runs every solver on every interior grid cell.
 *
 * Output is ordered by theta index, then tof index, then the order of ids, regardless
 * of how many worker threads run (workers <= 0 picks the hardware concurrency).
 */
std::vector<CellResult> scan_region(const std::vector<SolverId> &ids, const GridSpec &grid, int workers = 0);

struct BenchConfig {
    std::int64_t n_samples{100000};
    std::uint64_t seed{42};
    int repetitions{10};   ///< timed runs per sample; the median is kept
    int warmup{1000};      ///< leading samples run once, untimed, before measurement
    double radius_ratio{2.0};
};

struct SolverBenchStats {
    SolverId solver{SolverId::LagrangeNR};
    std::int64_t samples{0};
    std::int64_t converged{0};
    std::int64_t correct{0};  ///< converged and within the accuracy threshold; timing uses these only
    double mean_ns{0.0};
    double median_ns{0.0};
    double p95_ns{0.0};
    double mean_iterations{0.0};
    double p99_iterations{0.0};
    int rank{0};  ///< 1 = fastest mean time
};

struct BenchReport {
    std::vector<SolverBenchStats> stats;  ///< in the order of the requested ids
    std::vector<CellResult> cells;        ///< one per (sample, solver), median timings
};

/// Accuracy threshold counted as "converged correctly" (GaussSS is held to 1e-1).
double correctness_threshold(SolverId id) noexcept;

/// Uniform (theta, tof) samples on (0, 2 pi)^2 from a 64-bit Mersenne Twister.
std::vector<std::pair<double, double>> bench_samples(std::int64_t n, std::uint64_t seed);

BenchReport run_bench(const std::vector<SolverId> &ids, const BenchConfig &cfg);

/// Writes cells as CSV: theta,tof,solver,status,reason,iterations,velocity_error,wall_time_ns.
/// @throws LambertError(IoError) if the file cannot be written.
void emit_csv(const std::vector<CellResult> &results, const std::string &path);

/// Writes the per-solver benchmark table as CSV. @throws LambertError(IoError).
void emit_bench_csv(const BenchReport &report, const std::string &path);

/// Shortest round-trip formatting with 17 significant digits, '.' as decimal point.
std::string format_double(double v);

}  // namespace lambert
