// Command-line front end: solve one problem, scan the (theta, TOF) plane, or benchmark.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "lambert/error.hpp"
#include "lambert/harness.hpp"
#include "lambert/oracle.hpp"
#include "lambert/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitSolverFailure = 3;

std::vector<lambert::SolverId> parse_solvers(const std::vector<std::string> &names) {
    std::vector<lambert::SolverId> ids;
    for (const std::string &n : names) {
        if (n == "all") return {lambert::kAllSolvers.begin(), lambert::kAllSolvers.end()};
        const auto id = lambert::parse_solver_id(n);
        if (!id) throw lambert::LambertError(lambert::ErrorCode::InvalidProblem, "unknown solver '" + n + "'");
        ids.push_back(*id);
    }
    if (ids.empty()) return {lambert::kAllSolvers.begin(), lambert::kAllSolvers.end()};
    return ids;
}

lambert::Vec3 to_vec3(const std::vector<double> &v) { return {v.at(0), v.at(1), v.at(2)}; }

void print_vec(const char *label, const lambert::Vec3 &v) {
    std::printf("  %s = [% .17g, % .17g, % .17g]\n", label, v.x, v.y, v.z);
}

int run_solve(const std::vector<double> &r1, const std::vector<double> &r2, double tof, double mu, bool long_way,
              const std::vector<std::string> &solver_names) {
    const lambert::LambertProblem problem(to_vec3(r1), to_vec3(r2), tof, mu, long_way);
    const auto ids = parse_solvers(solver_names);
    int n_ok = 0;
    for (lambert::SolverId id : ids) {
        const lambert::SolverOutcome out = lambert::solve(id, problem);
        std::printf("%s: %s", std::string(lambert::to_string(id)).c_str(),
                    std::string(lambert::to_string(out.status)).c_str());
        if (!out.converged()) std::printf(" (%s)", std::string(lambert::to_string(out.reason)).c_str());
        std::printf("\n  iterations = %d\n  residual = %.3e\n", out.iterations, out.time_residual);
        if (out.converged()) {
            ++n_ok;
            print_vec("v1", out.v1);
            print_vec("v2", out.v2);
            const lambert::ValidationReport rep = lambert::validate_solution(problem, out.v1, out.v2);
            std::printf("  propagation position residual = %.3e\n", rep.position_residual);
        }
    }
    return n_ok > 0 ? kExitOk : kExitSolverFailure;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Single-revolution Lambert solver suite"};
    app.require_subcommand(1);

    std::vector<double> r1, r2;
    double tof = 0.0, mu = 1.0;
    bool long_way = false;
    std::vector<std::string> solve_solvers{"all"};
    auto *solve = app.add_subcommand("solve", "Solve one Lambert problem");
    solve->add_option("--r1", r1, "Departure position x,y,z")->required()->delimiter(',')->expected(3);
    solve->add_option("--r2", r2, "Arrival position x,y,z")->required()->delimiter(',')->expected(3);
    solve->add_option("--tof", tof, "Time of flight")->required();
    solve->add_option("--mu", mu, "Gravitational parameter")->capture_default_str();
    solve->add_flag("--long-way", long_way, "Transfer angle greater than pi");
    solve->add_option("--solver", solve_solvers, "Solver id or 'all'")->delimiter(',');

    std::vector<std::string> scan_solvers{"all"};
    int grid_n = 200;
    std::string scan_out = "scan.csv";
    int workers = 0;
    auto *scan = app.add_subcommand("scan", "Region-of-applicability scan over (theta, TOF)");
    scan->add_option("--solvers", scan_solvers, "Comma-separated solver ids or 'all'")->delimiter(',');
    scan->add_option("--grid", grid_n, "Grid steps per axis")->capture_default_str()->check(CLI::Range(2, 100000));
    scan->add_option("--out", scan_out, "Output CSV")->capture_default_str();
    scan->add_option("--workers", workers, "Worker threads (0 = hardware)")->capture_default_str();

    lambert::BenchConfig cfg;
    std::vector<std::string> bench_solvers{"all"};
    std::string bench_out = "bench.csv";
    std::string bench_cells;
    auto *bench = app.add_subcommand("bench", "Monte-Carlo timing benchmark");
    bench->add_option("--samples", cfg.n_samples, "Number of random samples")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    bench->add_option("--repetitions", cfg.repetitions, "Timed runs per sample")->capture_default_str();
    bench->add_option("--solvers", bench_solvers, "Comma-separated solver ids or 'all'")->delimiter(',');
    bench->add_option("--out", bench_out, "Per-solver summary CSV")->capture_default_str();
    bench->add_option("--cells", bench_cells, "Optional per-sample CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*solve) return run_solve(r1, r2, tof, mu, long_way, solve_solvers);
        if (*scan) {
            lambert::GridSpec grid;
            grid.theta_steps = grid.tof_steps = grid_n;
            const auto cells = lambert::scan_region(parse_solvers(scan_solvers), grid, workers);
            lambert::emit_csv(cells, scan_out);
            std::printf("wrote %zu cells to %s\n", cells.size(), scan_out.c_str());
            return kExitOk;
        }
        if (*bench) {
            const auto report = lambert::run_bench(parse_solvers(bench_solvers), cfg);
            lambert::emit_bench_csv(report, bench_out);
            if (!bench_cells.empty()) lambert::emit_csv(report.cells, bench_cells);
            std::printf("%-16s %8s %8s %8s %10s %10s %10s %7s %5s\n", "solver", "samples", "conv", "correct",
                        "mean_ns", "median_ns", "p95_ns", "iters", "rank");
            for (const auto &s : report.stats)
                std::printf("%-16s %8lld %8lld %8lld %10.0f %10.0f %10.0f %7.2f %5d\n",
                            std::string(lambert::to_string(s.solver)).c_str(), static_cast<long long>(s.samples),
                            static_cast<long long>(s.converged), static_cast<long long>(s.correct), s.mean_ns,
                            s.median_ns, s.p95_ns, s.mean_iterations, s.rank);
            return kExitOk;
        }
    } catch (const lambert::LambertError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == lambert::ErrorCode::IoError ? 1 : kExitInvalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}
