#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "lambert/oracle.hpp"
#include "lambert/specfun.hpp"
#include "lambert/tof.hpp"
#include "lambert/velocity.hpp"

namespace lambert::testing {

namespace {

constexpr double kPi = std::numbers::pi;

void note_failure(PropertyResult &res, const std::string &what) {
    if (res.ok) res.detail = what;
    res.ok = false;
}

Vec3 perifocal(double p, double e, double nu) {
    const double r = p / (1.0 + e * std::cos(nu));
    return {r * std::cos(nu), r * std::sin(nu), 0.0};
}

// Rz(raan) Rx(i) Rz(omega), written out independently of the library's rotation.
Vec3 to_inertial(const Vec3 &v, double i, double omega, double raan) {
    const double co = std::cos(omega), so = std::sin(omega);
    const double ci = std::cos(i), si = std::sin(i);
    const double cr = std::cos(raan), sr = std::sin(raan);
    const Vec3 a{co * v.x - so * v.y, so * v.x + co * v.y, v.z};
    const Vec3 b{a.x, ci * a.y - si * a.z, si * a.y + ci * a.z};
    return {cr * b.x - sr * b.y, sr * b.x + cr * b.y, b.z};
}

}  // namespace

double rel_err(const Vec3 &a, const Vec3 &b) { return norm(a - b) / norm(b); }

double uniform(std::mt19937_64 &rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Vec3 Rotation::apply(const Vec3 &v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Rotation random_rotation(std::mt19937_64 &rng) {
    // Unit quaternion from three uniforms (Shoemake).
    const double u1 = uniform(rng, 0.0, 1.0), u2 = uniform(rng, 0.0, 2.0 * kPi), u3 = uniform(rng, 0.0, 2.0 * kPi);
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double w = a * std::sin(u2), x = a * std::cos(u2), y = b * std::sin(u3), z = b * std::cos(u3);
    return Rotation{{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                     {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                     {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

LambertProblem oriented_problem(double theta, double t_norm, double ratio, const Rotation &rot) {
    const Vec3 r1 = rot.apply({1.0, 0.0, 0.0});
    const Vec3 r2 = rot.apply({ratio * std::cos(theta), ratio * std::sin(theta), 0.0});
    return LambertProblem(r1, r2, t_norm, 1.0, theta > kPi);
}

StumpffLd stumpff_ld(long double z) {
    if (std::fabs(z) < 1.0L) {
        // C = sum (-z)^k / (2k+2)!, S = sum (-z)^k / (2k+3)!
        long double c = 0.0L, s = 0.0L, tc = 0.5L, ts = 1.0L / 6.0L;
        for (int k = 0; k < 30; ++k) {
            c += tc;
            s += ts;
            tc *= -z / ((2.0L * k + 3.0L) * (2.0L * k + 4.0L));
            ts *= -z / ((2.0L * k + 4.0L) * (2.0L * k + 5.0L));
        }
        return {c, s};
    }
    if (z > 0.0L) {
        const long double q = std::sqrt(z);
        return {(1.0L - std::cos(q)) / z, (q - std::sin(q)) / (z * q)};
    }
    const long double q = std::sqrt(-z);
    return {(std::cosh(q) - 1.0L) / -z, (std::sinh(q) - q) / (-z * q)};
}

double battin_xi_bottom_up(double x, int depth) {
    const double sq = std::sqrt(1.0 + x);
    const double eta = x / ((1.0 + sq) * (1.0 + sq));
    double tail = 0.0;
    for (int n = depth + 3; n >= 4; --n) {
        const double cn = static_cast<double>(n) * n / (4.0 * n * n - 1.0);
        tail = cn * eta / (1.0 + tail);
    }
    tail = (9.0 / 7.0) * eta / (1.0 + tail);
    return 8.0 * (sq + 1.0) / (3.0 + 1.0 / (5.0 + eta + tail));
}

double ulp_sensitivity(const LambertProblem &p, const Vec3 &v1) {
    const Vec3 base = kepler_propagate(p.r1(), v1, p.tof(), p.mu()).r;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        Vec3 w = v1;
        double &c = i == 0 ? w.x : (i == 1 ? w.y : w.z);
        c = std::nextafter(c, std::numeric_limits<double>::infinity());
        worst = std::max(worst, norm(kepler_propagate(p.r1(), w, p.tof(), p.mu()).r - base) / norm(p.r2()));
    }
    return worst;
}

PropertyResult stumpff_identities() {
    PropertyResult res;
    const double zmax = 0.99 * 4.0 * kPi * kPi;
    const int n = 400;
    for (int sign : {1, -1}) {
        for (int k = 0; k <= n; ++k) {
            const double mag = 1e-6 * std::pow(zmax / 1e-6, static_cast<double>(k) / n);
            const double z = sign * mag;
            const StumpffPair sp = stumpff(z);
            const StumpffLd o = stumpff_ld(z);
            const long double lz = z;
            const long double ds = (o.c - 3.0L * o.s) / (2.0L * lz);
            const long double dc = (1.0L - lz * o.s - 2.0L * o.c) / (2.0L * lz);
            const double es = static_cast<double>(std::fabs((sp.ds_dz - ds) / ds));
            const double ec = static_cast<double>(std::fabs((sp.dc_dz - dc) / dc));
            res.worst = std::max({res.worst, es, ec});
            ++res.checked;
            if (!(es <= 1e-10 && ec <= 1e-10)) {
                std::ostringstream os;
                os << "identity off at z=" << z;
                note_failure(res, os.str());
            }
        }
    }
    return res;
}

PropertyResult formulation_monotonicity(std::uint64_t seed, int geometries, int points) {
    PropertyResult res;
    std::mt19937_64 rng(seed);
    const Rotation id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int k = 0; k < geometries; ++k) {
        const double theta = uniform(rng, 0.05, 2.0 * kPi - 0.05);
        const double ratio = uniform(rng, 0.2, 5.0);
        const auto [g, scale] = build_geometry(oriented_problem(theta, 1.0, ratio, id));
        (void)scale;

        struct Sweep {
            const char *name;
            double lo, hi;
            bool increasing;
            TofEvaluation (*eval)(double, const TransferGeometry &);
        };
        const DomainSpec bd = bate_domain(g);
        const DomainSpec sd = simo_domain(g);
        const Sweep sweeps[] = {
            {"lagrange", -1.0, 20.0, false, [](double w, const TransferGeometry &gg) { return tof_lagrange_x(w, gg); }},
            {"lancaster", -1.0, 20.0, false,
             [](double w, const TransferGeometry &gg) { return tof_lancaster_x(w, gg, 0); }},
            {"bate", std::max(bd.lower, -400.0), bd.upper, true,
             [](double w, const TransferGeometry &gg) { return tof_bate_z(w, gg); }},
            {"simo", std::max(sd.lower, -100.0), sd.upper, true,
             [](double w, const TransferGeometry &gg) { return tof_simo_z(w, gg); }},
        };
        for (const Sweep &sw : sweeps) {
            double prev = std::nan("");
            for (int i = 0; i < points; ++i) {
                const double w = sw.lo + (sw.hi - sw.lo) * (i + 0.5) / points;
                const TofEvaluation e = sw.eval(w, g);
                // The Lagrange series has a finite disc; outside it there is nothing to order.
                if (!e.in_domain() || e.truncated) {
                    if (std::string(sw.name) != "lagrange") {
                        std::ostringstream os;
                        os << sw.name << " out of domain inside its declared range at w=" << w;
                        note_failure(res, os.str());
                    }
                    prev = std::nan("");
                    continue;
                }
                if (std::isfinite(prev)) {
                    ++res.checked;
                    const bool ok = sw.increasing ? e.t > prev : e.t < prev;
                    if (!ok) {
                        std::ostringstream os;
                        os << sw.name << " not monotone at theta=" << theta << " ratio=" << ratio << " w=" << w;
                        note_failure(res, os.str());
                    }
                }
                prev = e.t;
            }
        }
    }
    return res;
}

PropertyResult velocity_equivalence(std::uint64_t seed, int samples) {
    PropertyResult res;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < samples; ++k) {
        const double p = uniform(rng, 0.5, 3.0);
        const double e = uniform(rng, 0.0, 0.9);
        const double inc = uniform(rng, 0.0, kPi);
        const double omega = uniform(rng, 0.0, 2.0 * kPi);
        const double raan = uniform(rng, 0.0, 2.0 * kPi);
        const double nu1 = uniform(rng, -kPi, kPi);
        double dnu = uniform(rng, 0.1, 2.0 * kPi - 0.1);
        if (std::abs(dnu - kPi) < 0.05) dnu += 0.1;  // stay clear of g = 0
        const double nu2 = nu1 + dnu;

        const Vec3 r1 = to_inertial(perifocal(p, e, nu1), inc, omega, raan);
        const Vec3 r2 = to_inertial(perifocal(p, e, nu2), inc, omega, raan);
        const double r1n = norm(r1), r2n = norm(r2);

        const ConicElements el{p, p / (1.0 - e * e), e, nu1, nu2, inc, omega, raan};
        const VelocityPair v_el = velocity_from_elements(el, 1.0);

        const double one_minus_cos = 1.0 - std::cos(dnu);
        const FgCoefficients fg{1.0 - r2n / p * one_minus_cos, r1n * r2n * std::sin(dnu) / std::sqrt(p),
                                1.0 - r1n / p * one_minus_cos};
        const VelocityPair v_fg = velocity_from_fg(fg, r1, r2);

        const double kh = 1.0 / std::sqrt(p);
        const VelocityComponents comp{kh * e * std::sin(nu1), kh * (1.0 + e * std::cos(nu1)), kh * e * std::sin(nu2),
                                      kh * (1.0 + e * std::cos(nu2))};
        const Vec3 normal = to_inertial({0.0, 0.0, 1.0}, inc, omega, raan);
        const VelocityPair v_rt = velocity_from_radial_transversal(comp, r1, r2, normal);

        const double errs[] = {rel_err(v_el.first, v_fg.first),   rel_err(v_el.second, v_fg.second),
                               rel_err(v_el.first, v_rt.first),   rel_err(v_el.second, v_rt.second),
                               rel_err(v_fg.first, v_rt.first),   rel_err(v_fg.second, v_rt.second)};
        for (double err : errs) res.worst = std::max(res.worst, err);

        // Same conic at both ends: specific energy and angular momentum vector.
        const double en1 = 0.5 * dot(v_el.first, v_el.first) - 1.0 / r1n;
        const double en2 = 0.5 * dot(v_el.second, v_el.second) - 1.0 / r2n;
        const Vec3 h1 = cross(r1, v_el.first), h2 = cross(r2, v_el.second);
        const double een = std::abs(en1 - en2) / std::abs(en1);
        const double eh = rel_err(h2, h1);
        res.worst = std::max({res.worst, een, eh});
        ++res.checked;
        if (*std::max_element(std::begin(errs), std::end(errs)) > 1e-10 || een > 1e-10 || eh > 1e-10) {
            std::ostringstream os;
            os << "methods disagree for p=" << p << " e=" << e << " dnu=" << dnu;
            note_failure(res, os.str());
        }
    }
    return res;
}

namespace {
double periapsis_radius(double rn, double vn, double gamma) {
    const double h = rn * vn * std::cos(gamma);
    const double energy = 0.5 * vn * vn - 1.0 / rn;
    const double ecc = std::sqrt(std::max(0.0, 1.0 + 2.0 * energy * h * h));
    return h * h / (1.0 + ecc);
}
}  // namespace

PropertyResult propagation_reversibility(std::uint64_t seed, int samples) {
    PropertyResult res;
    std::mt19937_64 rng(seed);
    const Rotation id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int k = 0; k < samples; ++k) {
        const Rotation rot = (k % 2 == 0) ? random_rotation(rng) : id;
        // Speed from 0.3 to 1.8 times circular speed covers ellipses and hyperbolas. States
        // diving below r = 0.25 are redrawn: several close periapsis passes amplify the
        // forward rounding past 1e-12 on the way back, whatever the propagator.
        double rn = 0.0, vn = 0.0, gamma = 0.0;
        do {
            rn = uniform(rng, 0.5, 3.0);
            vn = uniform(rng, 0.3, 1.8) / std::sqrt(rn);
            gamma = uniform(rng, -1.2, 1.2);  // flight-path angle
        } while (periapsis_radius(rn, vn, gamma) < 0.25);
        const Vec3 r = rot.apply({rn, 0.0, 0.0});
        const Vec3 v = rot.apply({vn * std::sin(gamma), vn * std::cos(gamma), 0.0});
        const double dt = uniform(rng, -10.0, 10.0);

        const StateVector fwd = kepler_propagate(r, v, dt, 1.0);
        const StateVector back = kepler_propagate(fwd.r, fwd.v, -dt, 1.0);
        const double er = rel_err(back.r, r), ev = rel_err(back.v, v);
        res.worst = std::max({res.worst, er, ev});
        ++res.checked;
        if (!(er <= 1e-12 && ev <= 1e-12)) {
            std::ostringstream os;
            os << "round trip off by " << std::max(er, ev) << " at dt=" << dt;
            note_failure(res, os.str());
        }
    }
    return res;
}

}  // namespace lambert::testing
