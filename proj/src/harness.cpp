#include "lambert/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <thread>

#include "lambert/error.hpp"
#include "lambert/oracle.hpp"
#include "lambert/tof.hpp"

namespace lambert {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double relative_error(const Vec3 &v, const Vec3 &ref) { return norm(v - ref) / norm(ref); }

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
}

CellResult run_cell(SolverId id, const LambertProblem &problem, double theta, double tof, bool have_ref,
                    const Vec3 &v1_ref) {
    CellResult cell;
    cell.theta = theta;
    cell.tof = tof;
    cell.solver = id;
    const auto t0 = std::chrono::steady_clock::now();
    const SolverOutcome out = solve(id, problem);
    cell.wall_time_ns = elapsed_ns(t0);
    cell.status = out.status;
    cell.reason = out.reason;
    cell.iterations = out.iterations;
    cell.velocity_error = (out.converged() && have_ref) ? relative_error(out.v1, v1_ref) : kNaN;
    return cell;
}

// Runs body(i) for i in [0, n) over a pool of workers; each index is owned by one worker.
template <class Body>
void parallel_for(std::size_t n, int workers, Body &&body) {
    int nw = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nw = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nw), std::max<std::size_t>(n, 1)));
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto &t : pool) t.join();
}

double percentile(std::vector<double> v, double q) {
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<double> grid_points(double lo, double hi, int steps) {
    if (steps < 2 || !(hi > lo)) throw LambertError(ErrorCode::InvalidProblem, "grid needs steps >= 2 and hi > lo");
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(steps - 1));
    const double step = (hi - lo) / steps;
    for (int i = 1; i < steps; ++i) pts.push_back(lo + i * step);
    return pts;
}

LambertProblem in_plane_problem(double theta, double tof, double radius_ratio) {
    const Vec3 r1{1.0, 0.0, 0.0};
    const Vec3 r2{radius_ratio * std::cos(theta), radius_ratio * std::sin(theta), 0.0};
    return LambertProblem(r1, r2, tof, 1.0, theta > std::numbers::pi);
}

bool cell_is_elliptic(double theta, double tof, double radius_ratio) {
    const auto [g, scale] = build_geometry(in_plane_problem(theta, tof, radius_ratio));
    return g.t_norm > parabolic_time(g);
}

std::vector<CellResult> scan_region(const std::vector<SolverId> &ids, const GridSpec &grid, int workers) {
    const std::vector<double> thetas = grid_points(grid.theta_lo, grid.theta_hi, grid.theta_steps);
    const std::vector<double> tofs = grid_points(grid.tof_lo, grid.tof_hi, grid.tof_steps);
    const std::size_t n_cells = thetas.size() * tofs.size();
    const std::size_t per_cell = ids.size();
    std::vector<CellResult> out(n_cells * per_cell);

    parallel_for(n_cells, workers, [&](std::size_t c) {
        const double theta = thetas[c / tofs.size()];
        const double tof = tofs[c % tofs.size()];
        const LambertProblem problem = in_plane_problem(theta, tof, grid.radius_ratio);
        Vec3 v1_ref{};
        bool have_ref = true;
        try {
            v1_ref = reference_solve(problem).first;
        } catch (const LambertError &) {
            have_ref = false;
        }
        for (std::size_t k = 0; k < per_cell; ++k)
            out[c * per_cell + k] = run_cell(ids[k], problem, theta, tof, have_ref, v1_ref);
    });
    return out;
}

double correctness_threshold(SolverId id) noexcept { return id == SolverId::GaussSS ? 1e-1 : 1e-6; }

std::vector<std::pair<double, double>> bench_samples(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // 53-bit uniforms on (0, 1), built by hand so the sequence does not depend on the
    // standard library's distribution implementation.
    auto uniform = [&rng] {
        for (;;) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    };
    std::vector<std::pair<double, double>> s;
    s.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    for (std::int64_t i = 0; i < n; ++i) {
        const double theta = kTwoPi * uniform();
        const double tof = kTwoPi * uniform();
        s.emplace_back(theta, tof);
    }
    return s;
}

BenchReport run_bench(const std::vector<SolverId> &ids, const BenchConfig &cfg) {
    if (cfg.n_samples < 1) throw LambertError(ErrorCode::InvalidProblem, "n_samples must be >= 1");
    const auto samples = bench_samples(cfg.n_samples, cfg.seed);
    const int reps = std::max(1, cfg.repetitions);

    // Warm caches and branch predictors; results discarded.
    const auto n_warm = std::min<std::size_t>(samples.size(), static_cast<std::size_t>(std::max(0, cfg.warmup)));
    for (std::size_t i = 0; i < n_warm; ++i) {
        const LambertProblem p = in_plane_problem(samples[i].first, samples[i].second, cfg.radius_ratio);
        for (SolverId id : ids) (void)solve(id, p);
    }

    BenchReport report;
    report.cells.reserve(samples.size() * ids.size());
    std::vector<std::int64_t> times(static_cast<std::size_t>(reps));
    for (const auto &[theta, tof] : samples) {
        std::optional<LambertProblem> problem;
        try {
            problem.emplace(in_plane_problem(theta, tof, cfg.radius_ratio));
        } catch (const LambertError &) {
            continue;  // degenerate draw (theta rounding onto 0 or 2 pi)
        }
        Vec3 v1_ref{};
        bool have_ref = true;
        try {
            v1_ref = reference_solve(*problem).first;
        } catch (const LambertError &) {
            have_ref = false;
        }
        for (SolverId id : ids) {
            CellResult cell = run_cell(id, *problem, theta, tof, have_ref, v1_ref);
            times[0] = cell.wall_time_ns;
            for (int r = 1; r < reps; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                (void)solve(id, *problem);
                times[static_cast<std::size_t>(r)] = elapsed_ns(t0);
            }
            std::nth_element(times.begin(), times.begin() + reps / 2, times.end());
            cell.wall_time_ns = times[static_cast<std::size_t>(reps / 2)];
            report.cells.push_back(cell);
        }
    }

    for (SolverId id : ids) {
        SolverBenchStats st;
        st.solver = id;
        std::vector<double> ns, its;
        for (const CellResult &c : report.cells) {
            if (c.solver != id) continue;
            ++st.samples;
            if (c.status != OutcomeStatus::Converged) continue;
            ++st.converged;
            if (!(c.velocity_error <= correctness_threshold(id))) continue;
            ++st.correct;
            ns.push_back(static_cast<double>(c.wall_time_ns));
            its.push_back(c.iterations);
        }
        if (!ns.empty()) {
            st.mean_ns = std::accumulate(ns.begin(), ns.end(), 0.0) / static_cast<double>(ns.size());
            st.median_ns = percentile(ns, 0.5);
            st.p95_ns = percentile(ns, 0.95);
            st.mean_iterations = std::accumulate(its.begin(), its.end(), 0.0) / static_cast<double>(its.size());
            st.p99_iterations = percentile(its, 0.99);
        }
        report.stats.push_back(st);
    }
    std::vector<std::size_t> order(report.stats.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto &sa = report.stats[a], &sb = report.stats[b];
        if ((sa.correct > 0) != (sb.correct > 0)) return sa.correct > 0;
        return sa.mean_ns < sb.mean_ns;
    });
    for (std::size_t r = 0; r < order.size(); ++r) report.stats[order[r]].rank = static_cast<int>(r + 1);
    return report;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void emit_csv(const std::vector<CellResult> &results, const std::string &path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw LambertError(ErrorCode::IoError, "cannot open " + path);
    os << "theta,tof,solver,status,reason,iterations,velocity_error,wall_time_ns\n";
    for (const CellResult &c : results) {
        os << format_double(c.theta) << ',' << format_double(c.tof) << ',' << to_string(c.solver) << ','
           << to_string(c.status) << ',' << to_string(c.reason) << ',' << c.iterations << ','
           << format_double(c.velocity_error) << ',' << c.wall_time_ns << '\n';
    }
    os.flush();
    if (!os) throw LambertError(ErrorCode::IoError, "write failed for " + path);
}

void emit_bench_csv(const BenchReport &report, const std::string &path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw LambertError(ErrorCode::IoError, "cannot open " + path);
    os << "solver,samples,converged,correct,mean_ns,median_ns,p95_ns,mean_iterations,p99_iterations,rank\n";
    for (const SolverBenchStats &s : report.stats) {
        os << to_string(s.solver) << ',' << s.samples << ',' << s.converged << ',' << s.correct << ','
           << format_double(s.mean_ns) << ',' << format_double(s.median_ns) << ',' << format_double(s.p95_ns) << ','
           << format_double(s.mean_iterations) << ',' << format_double(s.p99_iterations) << ',' << s.rank << '\n';
    }
    os.flush();
    if (!os) throw LambertError(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace lambert
