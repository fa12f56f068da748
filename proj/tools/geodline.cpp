// geodline: inverse geodesic on the constant-altitude surface above a
// biaxial ellipsoid. Prints '#' comment diagnostics plus one 7-column line
// per trajectory sample: x y z lambda phi kappa s.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "isogeod/error.hpp"
#include "isogeod/geodesic.hpp"
#include "isogeod/series.hpp"
#include "isogeod/shooting.hpp"

using namespace isogeod;

namespace {

constexpr double kPi = 3.141592653589793;

enum class AngleUnit { deg, rad, gon };
enum class SolverChoice { shooting, series, both };
enum class OutputFormat { columns, structured };

struct RunConfig {
    double rho = 0.0;  // filled from wgs84() in main
    double ecc = 0.0;
    double h = 0.0;
    int n_steps = 400;
    int undersample = 10;
    int taylor_order = 3;
    AngleUnit unit = AngleUnit::deg;
    SolverChoice solver = SolverChoice::shooting;
    OutputFormat format = OutputFormat::columns;
    double phi1 = 0.0, lambda1 = 0.0, phi2 = 0.0, lambda2 = 0.0;
    bool have_coords = false;
};

const char* kUsage =
    "usage: geodline [options] phi1 lambda1 phi2 lambda2\n"
    "\n"
    "Inverse geodesic on the constant-altitude surface above a biaxial\n"
    "ellipsoid. Coordinates are geodetic, in degrees unless -r or -g is\n"
    "given. Output: '#' comment lines plus 7 columns per sample point\n"
    "(x y z lambda phi kappa s).\n"
    "\n"
    "  -h <alt>       altitude above the ellipsoid (units of -R), default 0\n"
    "  -s <n>         longitude mesh elements, default 400\n"
    "  -u <k>         print every k-th mesh point, default 10 (k <= 0: none)\n"
    "  -R <radius>    equatorial radius, default 6378137 (WGS84)\n"
    "  -e <ecc>       eccentricity, 0 <= e < 1, default WGS84\n"
    "  -r             angles in radians\n"
    "  -g             angles in gons (400 gon = 360 deg)\n"
    "  -2             second-order Taylor steps (default: third order)\n"
    "  --solver <x>   shooting | series | both (default shooting)\n"
    "  --format <x>   columns | structured (default columns)\n"
    "  --help         show this text\n";

std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool parse_double(const char* s, double& out) {
    char* end = nullptr;
    out = std::strtod(s, &end);
    return end != s && *end == '\0';
}

bool parse_int(const char* s, int& out) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0') return false;
    out = static_cast<int>(v);
    return true;
}

[[noreturn]] void usage_error(const std::string& msg) {
    std::fprintf(stderr, "geodline: %s\ntry 'geodline --help'\n", msg.c_str());
    std::exit(1);
}

double to_rad(double x, AngleUnit u) {
    switch (u) {
        case AngleUnit::deg: return x * kPi / 180.0;
        case AngleUnit::gon: return x * kPi / 200.0;
        default: return x;
    }
}

double from_rad(double x, AngleUnit u) {
    switch (u) {
        case AngleUnit::deg: return x * 180.0 / kPi;
        case AngleUnit::gon: return x * 200.0 / kPi;
        default: return x;
    }
}

RunConfig parse_args(int argc, char** argv) {
    RunConfig cfg;
    Ellipsoid w = wgs84();
    cfg.rho = w.rho_e;
    cfg.ecc = w.ecc;

    auto value = [&](int& i) -> const char* {
        if (i + 1 >= argc) usage_error(std::string(argv[i]) + " expects a value");
        return argv[++i];
    };

    for (int i = 1; i < argc; ++i) {
        const char* a = argv[i];
        if (std::strcmp(a, "-h") == 0) {
            if (!parse_double(value(i), cfg.h)) usage_error("-h expects a number");
        } else if (std::strcmp(a, "-s") == 0) {
            if (!parse_int(value(i), cfg.n_steps) || cfg.n_steps < 1)
                usage_error("-s expects a positive integer");
        } else if (std::strcmp(a, "-u") == 0) {
            if (!parse_int(value(i), cfg.undersample))
                usage_error("-u expects an integer");
        } else if (std::strcmp(a, "-R") == 0) {
            if (!parse_double(value(i), cfg.rho) || !(cfg.rho > 0.0))
                usage_error("-R expects a positive radius");
        } else if (std::strcmp(a, "-e") == 0) {
            if (!parse_double(value(i), cfg.ecc) || !(cfg.ecc >= 0.0) ||
                !(cfg.ecc < 1.0))
                usage_error("-e expects an eccentricity in [0, 1)");
        } else if (std::strcmp(a, "-r") == 0) {
            cfg.unit = AngleUnit::rad;
        } else if (std::strcmp(a, "-g") == 0) {
            cfg.unit = AngleUnit::gon;
        } else if (std::strcmp(a, "-2") == 0) {
            cfg.taylor_order = 2;
        } else if (std::strcmp(a, "--solver") == 0) {
            std::string v = value(i);
            if (v == "shooting") cfg.solver = SolverChoice::shooting;
            else if (v == "series") cfg.solver = SolverChoice::series;
            else if (v == "both") cfg.solver = SolverChoice::both;
            else usage_error("--solver expects shooting, series or both");
        } else if (std::strcmp(a, "--format") == 0) {
            std::string v = value(i);
            if (v == "columns") cfg.format = OutputFormat::columns;
            else if (v == "structured") cfg.format = OutputFormat::structured;
            else usage_error("--format expects columns or structured");
        } else if (std::strcmp(a, "--help") == 0) {
            std::fputs(kUsage, stdout);
            std::exit(0);
        } else {
            // First token that is no flag starts the group of four coordinates.
            if (i + 3 >= argc) usage_error("need four coordinates: phi1 lambda1 phi2 lambda2");
            double* slots[4] = {&cfg.phi1, &cfg.lambda1, &cfg.phi2, &cfg.lambda2};
            for (int k = 0; k < 4; ++k)
                if (!parse_double(argv[i + k], *slots[k]))
                    usage_error(std::string("cannot parse coordinate '") + argv[i + k] + "'");
            i += 3;
            cfg.have_coords = true;
        }
    }
    if (!cfg.have_coords) usage_error("need four coordinates: phi1 lambda1 phi2 lambda2");
    return cfg;
}

// Seven space-separated fields: x y z lambda phi kappa s, angles converted
// to the configured unit.
std::string format_sample(const TrajectorySample& p, AngleUnit u) {
    return fmt(p.r.x()) + " " + fmt(p.r.y()) + " " + fmt(p.r.z()) + " " +
           fmt(from_rad(p.lambda, u)) + " " + fmt(from_rad(p.phi, u)) + " " +
           fmt(from_rad(p.kappa, u)) + " " + fmt(p.s);
}

std::string format_sample_json(const TrajectorySample& p, AngleUnit u) {
    return "{\"x\":" + fmt(p.r.x()) + ",\"y\":" + fmt(p.r.y()) +
           ",\"z\":" + fmt(p.r.z()) + ",\"lambda\":" + fmt(from_rad(p.lambda, u)) +
           ",\"phi\":" + fmt(from_rad(p.phi, u)) +
           ",\"kappa\":" + fmt(from_rad(p.kappa, u)) + ",\"s\":" + fmt(p.s) + "}";
}

void emit_samples(const std::vector<TrajectorySample>& samples, const RunConfig& cfg) {
    for (const TrajectorySample& p : samples) {
        std::string line = cfg.format == OutputFormat::columns
                               ? format_sample(p, cfg.unit)
                               : format_sample_json(p, cfg.unit);
        std::printf("%s\n", line.c_str());
    }
}

void print_headers(const RunConfig& cfg, const Boundary& b) {
    std::printf("# equat Radius %s, eccentricity %s, altitude %s\n",
                fmt(cfg.rho).c_str(), fmt(cfg.ecc).c_str(), fmt(cfg.h).c_str());
    std::printf("# inverse flattening %s\n",
                fmt(1.0 / (1.0 - std::sqrt(1.0 - cfg.ecc * cfg.ecc))).c_str());
    std::printf("# start %s rad, %s rad; end %s rad, %s rad\n", fmt(b.phi1).c_str(),
                fmt(b.lambda1).c_str(), fmt(b.phi2).c_str(), fmt(b.lambda2).c_str());
    if (cfg.unit == AngleUnit::deg)
        std::printf("# start %s deg, %s deg; end %s deg, %s deg\n",
                    fmt(from_rad(b.phi1, cfg.unit)).c_str(),
                    fmt(from_rad(b.lambda1, cfg.unit)).c_str(),
                    fmt(from_rad(b.phi2, cfg.unit)).c_str(),
                    fmt(from_rad(b.lambda2, cfg.unit)).c_str());
    else if (cfg.unit == AngleUnit::gon)
        std::printf("# start %s gon, %s gon; end %s gon, %s gon\n",
                    fmt(from_rad(b.phi1, cfg.unit)).c_str(),
                    fmt(from_rad(b.lambda1, cfg.unit)).c_str(),
                    fmt(from_rad(b.phi2, cfg.unit)).c_str(),
                    fmt(from_rad(b.lambda2, cfg.unit)).c_str());
    std::printf("# %d elements, Taylor order %d\n", cfg.n_steps, cfg.taylor_order);
}

void print_start_course(double kappa) {
    std::printf("# start course %s rad, %s deg\n", fmt(kappa).c_str(),
                fmt(kappa * 180.0 / kPi).c_str());
}

// Course at the launch point for a given c3, with the discriminant clamped
// so a start exactly on the solstice still prints +-pi/2.
double launch_course(const Surface& sf, const Boundary& b, double c3) {
    double tau1 = std::sin(b.phi1);
    double t0 = std::max(discriminant(sf, tau1, c3).T, 0.0);
    return std::atan2(c3 / (radius_N(sf, tau1) + sf.h),
                      initial_north_sign(b) * std::sqrt(t0));
}

const char* route_name(Route r) {
    switch (r) {
        case Route::direct: return "direct";
        case Route::via_solstice: return "via-solstice";
        default: return "meridian";
    }
}

// Meridian paths cannot be marched in lambda; sample them in phi instead.
// Legs: one for a shared meridian or a polar endpoint, two when the path
// crosses a pole (|dlambda| = pi).
void run_meridian(const Surface& sf, const Boundary& b, const RunConfig& cfg) {
    struct Leg {
        double phi_a, phi_b, lambda;
    };
    std::vector<Leg> legs;
    bool pole1 = std::abs(std::cos(b.phi1)) < 1e-12;
    bool pole2 = std::abs(std::cos(b.phi2)) < 1e-12;
    double dl = b.lambda2 - b.lambda1;
    if (pole1) {
        legs.push_back({b.phi1, b.phi2, b.lambda2});
    } else if (pole2 || std::abs(dl) < 1.0) {
        legs.push_back({b.phi1, b.phi2, b.lambda1});
    } else {
        double pole = (b.phi1 + b.phi2 >= 0.0) ? 0.5 * kPi : -0.5 * kPi;
        legs.push_back({b.phi1, pole, b.lambda1});
        legs.push_back({pole, b.phi2, b.lambda2});
    }

    auto dist = [&](double tau) { return distance_underivative(sf, tau, 0.0, 4); };

    double total = 0.0;
    std::vector<double> offset(legs.size());
    for (size_t k = 0; k < legs.size(); ++k) {
        offset[k] = total;
        total += std::abs(dist(std::sin(legs[k].phi_b)) - dist(std::sin(legs[k].phi_a)));
    }

    std::printf("# c3 (series) 0 route meridian length %s\n", fmt(total).c_str());
    double dir0 = legs[0].phi_b >= legs[0].phi_a ? 1.0 : -1.0;
    print_start_course(dir0 > 0.0 ? 0.0 : kPi);

    double span = 0.0;
    for (const Leg& lg : legs) span += std::abs(lg.phi_b - lg.phi_a);
    if (span == 0.0 || cfg.undersample <= 0) return;

    std::vector<TrajectorySample> samples;
    for (int i = 0; i < cfg.n_steps; ++i) {
        if ((i + 1) % cfg.undersample != 0) continue;
        double w = span * (i + 1) / cfg.n_steps;
        size_t k = 0;
        double walked = 0.0;
        while (k + 1 < legs.size() &&
               w > walked + std::abs(legs[k].phi_b - legs[k].phi_a)) {
            walked += std::abs(legs[k].phi_b - legs[k].phi_a);
            ++k;
        }
        const Leg& lg = legs[k];
        double dir = lg.phi_b >= lg.phi_a ? 1.0 : -1.0;
        double phi = lg.phi_a + dir * (w - walked);
        TrajectorySample p;
        p.lambda = lg.lambda;
        p.phi = phi;
        p.kappa = dir > 0.0 ? 0.0 : kPi;
        p.s = offset[k] + std::abs(dist(std::sin(phi)) - dist(std::sin(lg.phi_a)));
        p.r = to_cartesian(sf, phi, lg.lambda);
        samples.push_back(p);
    }
    emit_samples(samples, cfg);
}

void run_series_line(const Surface& sf, const Boundary& b, SeriesSolve& sol) {
    sol = solve_c3(sf, b, 4);
    double tau1 = std::sin(b.phi1), tau2 = std::sin(b.phi2);
    double len;
    if (tau1 == 0.0 && tau2 == 0.0)  // equatorial: tau does not parametrize
        len = sf.H() * std::abs(b.lambda2 - b.lambda1);
    else
        len = path_length(sf, tau1, tau2, sol.c3, 4, sol.route);
    std::printf("# c3 (series) %s route %s length %s\n", fmt(sol.c3).c_str(),
                route_name(sol.route), fmt(len).c_str());
}

void run_shooting_block(const Surface& sf, const Boundary& b, const RunConfig& cfg) {
    ShootingConfig scfg;
    scfg.n_steps = cfg.n_steps;
    scfg.taylor_order = cfg.taylor_order;
    scfg.undersample = cfg.undersample;

    ShootSolve sol = c3_shoot(sf, b, scfg);
    for (const ShootStage& st : sol.stages) {
        const char* label = nullptr;
        if (st.kind == StageKind::spherical) label = "spherical";
        else if (st.kind == StageKind::linear) label = "linear extrapol";
        else if (st.kind == StageKind::quadratic) label = "quadratic extrapol";
        if (label)
            std::printf("# c3 (%s) %s err %s\n", label, fmt(st.c3).c_str(),
                        fmt(st.error).c_str());
    }
    print_start_course(launch_course(sf, b, sol.c3));
    ShootResult traj = tau_shoot(sf, b, sol.c3, scfg);
    emit_samples(traj.samples, cfg);
    std::printf("# c3 %s endpoint error %s length %s\n", fmt(sol.c3).c_str(),
                fmt(traj.endpoint_error).c_str(), fmt(traj.s_total).c_str());
}

void run_series_block(const Surface& sf, const Boundary& b, const RunConfig& cfg) {
    SeriesSolve sol;
    run_series_line(sf, b, sol);
    print_start_course(launch_course(sf, b, sol.c3));
    if (cfg.undersample > 0) {
        ShootingConfig scfg;
        scfg.n_steps = cfg.n_steps;
        scfg.taylor_order = cfg.taylor_order;
        scfg.undersample = cfg.undersample;
        ShootResult traj = tau_shoot(sf, b, sol.c3, scfg);
        emit_samples(traj.samples, cfg);
    }
}

int run(const RunConfig& cfg) {
    Boundary b;
    b.phi1 = to_rad(cfg.phi1, cfg.unit);
    b.lambda1 = to_rad(cfg.lambda1, cfg.unit);
    b.phi2 = to_rad(cfg.phi2, cfg.unit);
    b.lambda2 = adjust_lambda_end(b.lambda1, to_rad(cfg.lambda2, cfg.unit));

    Surface sf(Ellipsoid(cfg.rho, cfg.ecc), cfg.h);
    print_headers(cfg, b);

    double dl = b.lambda2 - b.lambda1;
    bool meridian_like = std::abs(std::sin(dl)) < 1e-12 ||
                         std::abs(std::cos(b.phi1)) < 1e-12 ||
                         std::abs(std::cos(b.phi2)) < 1e-12;
    try {
        if (meridian_like) {
            if (std::abs(dl) > 1.0 && std::abs(b.phi1 + b.phi2) < 1e-12)
                throw geodesic_error(errc::degenerate_geometry,
                                     "antipodal endpoints: the geodesic is not unique");
            if (std::abs(dl) < 1e-12 && b.phi1 == b.phi2)
                throw geodesic_error(errc::degenerate_geometry,
                                     "coincident endpoints span no path");
            // A lambda mesh cannot carry c3 = 0; all solver choices take the
            // meridian renderer here.
            run_meridian(sf, b, cfg);
            return 0;
        }
        if (cfg.solver == SolverChoice::series) {
            run_series_block(sf, b, cfg);
        } else if (cfg.solver == SolverChoice::shooting) {
            run_shooting_block(sf, b, cfg);
        } else {
            SeriesSolve sol;
            run_series_line(sf, b, sol);
            run_shooting_block(sf, b, cfg);
        }
    } catch (const geodesic_error& ge) {
        std::fprintf(stderr, "geodline: %s\n", ge.what());
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg = parse_args(argc, argv);
    try {
        return run(cfg);
    } catch (const geodesic_error& ge) {
        // Errors before solving start are input problems.
        std::fprintf(stderr, "geodline: %s\n", ge.what());
        return 1;
    }
}
