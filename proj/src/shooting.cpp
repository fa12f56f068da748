#include "isogeod/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "isogeod/error.hpp"
#include "isogeod/geodesic.hpp"
#include "isogeod/metric.hpp"
#include "isogeod/spherical.hpp"

namespace isogeod {

namespace {

void check_order(int order) {
    if (order != 2 && order != 3)
        throw geodesic_error(errc::bad_input, "taylor order must be 2 or 3");
}

// Taylor coefficients from an already-computed discriminant, so the mesh
// walk can clamp T before taking square roots.
StepDerivs derivs_from(const Surface& sf, double tau, double c3, int north,
                       int order, const Discriminant& dsc) {
    FundamentalForms ff = fundamental_forms(sf, tau);
    MetricDerivs md = fundamental_form_derivatives(sf, tau);
    detail::RadiusDerivs rd = detail::radius_derivs(sf.ell, tau);
    double mh = rd.M + sf.h;

    // p = (dtau/dlambda)/sqrt(T) = E/(c3 (M+h)) and its tau-derivatives,
    // via g = 1/(M+h).
    double g = 1.0 / mh;
    double gp = -rd.dM * g * g;
    double gpp = -rd.d2M * g * g + 2.0 * rd.dM * rd.dM * g * g * g;
    double p = ff.E * g / c3;
    double pp = (md.dE * g + ff.E * gp) / c3;
    double ppp = (md.d2E * g + 2.0 * md.dE * gp + ff.E * gpp) / c3;

    double rt = std::sqrt(dsc.T);
    StepDerivs d;
    d.dtau1 = north * p * rt;
    d.dtau2 = p * pp * dsc.T + 0.5 * p * p * dsc.dT;
    d.dtau3 = (order >= 3)
                  ? north * rt *
                        (p * pp * pp * dsc.T + p * p * ppp * dsc.T +
                         2.0 * p * p * pp * dsc.dT + 0.5 * p * p * p * dsc.d2T)
                  : 0.0;
    d.ds1 = ff.E / c3;
    d.ds2 = d.dtau1 * md.dE / c3;
    d.ds3 = (order >= 3) ? (d.dtau2 * md.dE + d.dtau1 * d.dtau1 * md.d2E) / c3
                         : 0.0;
    return d;
}

}  // namespace

StepDerivs step_derivatives(const Surface& s, double tau, double c3, int north,
                            int order) {
    check_order(order);
    if (c3 == 0.0)
        throw geodesic_error(errc::meridian_degenerate,
                             "lambda mesh cannot carry a meridian");
    Discriminant dsc = discriminant(s, tau, c3);
    if (dsc.T < 0.0)
        throw geodesic_error(errc::beyond_solstice,
                             "latitude beyond the solstice for this c3");
    return derivs_from(s, tau, c3, north, order, dsc);
}

int initial_north_sign(const Boundary& b) {
    double cos_z = std::sin(b.phi1) * std::sin(b.phi2) +
                   std::cos(b.phi1) * std::cos(b.phi2) *
                       std::cos(b.lambda2 - b.lambda1);
    return (std::sin(b.phi2) - std::sin(b.phi1) * cos_z) >= 0.0 ? 1 : -1;
}

double adjust_lambda_end(double lambda1, double lambda2) {
    const double two_pi = 6.283185307179586;
    double dl = lambda2 - lambda1;
    if (std::abs(dl + two_pi) < std::abs(dl)) lambda2 += two_pi;
    if (std::abs(dl - two_pi) < std::abs(dl)) lambda2 -= two_pi;
    return lambda2;
}

ShootResult tau_shoot(const Surface& s, const Boundary& b, double c3,
                      const ShootingConfig& cfg) {
    check_order(cfg.taylor_order);
    if (cfg.n_steps < 1)
        throw geodesic_error(errc::bad_input, "need at least one mesh element");
    if (c3 == 0.0)
        throw geodesic_error(errc::meridian_degenerate,
                             "lambda mesh cannot carry a meridian");
    if (b.lambda2 == b.lambda1)
        throw geodesic_error(errc::bad_input, "zero longitude span");

    const double dlam = (b.lambda2 - b.lambda1) / cfg.n_steps;
    double tau = std::sin(b.phi1);
    double s_acc = 0.0;
    int north = initial_north_sign(b);

    ShootResult out;
    out.flips = 0;
    if (cfg.undersample > 0)
        out.samples.reserve(static_cast<size_t>(cfg.n_steps / cfg.undersample));

    // T may round below zero by roughly one element's worth of drift when an
    // element lands on the solstice; treat that much as an exact graze.
    double g_max = 0.0;
    const double eps_floor = 64.0 * std::numeric_limits<double>::epsilon();
    double t_clamp = eps_floor;

    for (int i = 0; i < cfg.n_steps; ++i) {
        Discriminant dsc = discriminant(s, tau, c3);
        if (dsc.T < 0.0) {
            if (-dsc.T > t_clamp)
                throw geodesic_error(errc::integration_failure,
                                     "trajectory left the reachable band",
                                     b.lambda1 + i * dlam);
            dsc.T = 0.0;
        }
        StepDerivs d = derivs_from(s, tau, c3, north, cfg.taylor_order, dsc);
        g_max = std::max(g_max, std::abs(dsc.dT * d.dtau1));
        t_clamp = std::abs(dlam) * g_max + eps_floor;

        tau += dlam * (d.dtau1 + dlam * (0.5 * d.dtau2 + dlam * d.dtau3 / 6.0));
        // Longitude offset of the parabola's flat point; a value inside the
        // element means the solstice was crossed during this step.
        const double lam_flat = -d.dtau1 / d.dtau2;
        s_acc += dlam * (d.ds1 + dlam * (0.5 * d.ds2 + dlam * d.ds3 / 6.0));

        if (cfg.undersample > 0 && (i + 1) % cfg.undersample == 0) {
            double longi = b.lambda1 + (i + 1) * dlam;
            double tau_c = std::clamp(tau, -1.0, 1.0);
            double t_here = discriminant(s, tau_c, c3).T;
            if (t_here < 0.0) {
                if (-t_here > t_clamp)
                    throw geodesic_error(errc::integration_failure,
                                         "trajectory left the reachable band",
                                         longi);
                t_here = 0.0;
            }
            TrajectorySample smp;
            smp.lambda = longi;
            smp.phi = std::asin(tau_c);
            smp.kappa = std::atan2(c3 / (radius_N(s, tau_c) + s.h),
                                   north * std::sqrt(t_here));
            smp.s = s_acc;
            smp.r = to_cartesian(s, smp.phi, longi);
            out.samples.push_back(smp);
        }

        // Branch flip after the sample so the emitted course keeps the sign
        // the element was integrated with. dtau1 == 0 only at a clamped
        // graze, where the branch was already settled.
        double q = lam_flat / dlam;
        if (d.dtau1 != 0.0 && q >= 0.0 && q < 1.0) {
            north = -north;
            ++out.flips;
        }
    }

    out.tau_end = tau;
    out.endpoint_error = tau - std::sin(b.phi2);
    out.s_total = s_acc;
    out.final_north = north;
    return out;
}

namespace {

double shoot_miss(const Surface& s, const Boundary& b, double c3,
                  const ShootingConfig& cfg) {
    ShootingConfig probe = cfg;
    probe.undersample = 0;
    return tau_shoot(s, b, c3, probe).endpoint_error;
}

bool is_integration_failure(const geodesic_error& ge) {
    return ge.code() == errc::integration_failure;
}

}  // namespace

ShootSolve c3_shoot(const Surface& s, const Boundary& b,
                    const ShootingConfig& cfg) {
    check_order(cfg.taylor_order);
    const double tol = cfg.endpoint_tolerance;

    ShootSolve out;
    out.staged_convergence = false;

    auto probe = [&](StageKind kind, double c3) {
        double miss = shoot_miss(s, b, c3, cfg);
        out.stages.push_back({kind, c3, miss});
        return miss;
    };

    double c0 = c3_sphere(b, s.H());
    if (c0 == 0.0)
        throw geodesic_error(errc::degenerate_geometry,
                             "spherical seed vanishes; use the meridian path");
    double e0 = probe(StageKind::spherical, c0);

    bool staged_done = std::abs(e0) <= tol;
    // Startup stages mirror the classic scheme: offset probe, linear
    // extrapolation, quadratic extrapolation, each skipped once converged.
    // An iterate that fails to integrate just ends the startup early.
    try {
        const double dc = -0.005 * c0;
        if (!staged_done) {
            double e1 = probe(StageKind::offset_probe, c0 + dc);
            staged_done = std::abs(e1) <= tol;
            if (!staged_done && e1 != e0) {
                double c2 = c0 - dc * e0 / (e1 - e0);
                double e2 = probe(StageKind::linear, c2);
                staged_done = std::abs(e2) <= tol;
                if (!staged_done) {
                    double c1 = c0 + dc;
                    // Lagrange quadratic err(c) ~ a0 + a1 c + a2 c^2 through
                    // the three probes, up to a common factor.
                    double a0 = e2 * c0 * c1 * (c0 - c1) +
                                e1 * c0 * c2 * (c2 - c0) +
                                e0 * c1 * c2 * (c1 - c2);
                    double a1 = e2 * (c1 * c1 - c0 * c0) +
                                e1 * (c0 * c0 - c2 * c2) +
                                e0 * (c2 * c2 - c1 * c1);
                    double a2 = e2 * (c0 - c1) + e1 * (c2 - c0) + e0 * (c1 - c2);
                    if (a2 != 0.0) {
                        a0 /= a2;
                        a1 /= a2;
                        double disc = 0.25 * a1 * a1 - a0;
                        if (disc >= 0.0) {
                            disc = std::sqrt(disc);
                            // Of the two roots take the one nearer the last
                            // estimate.
                            double cq = (c2 + 0.5 * a1 > 0.0) ? -0.5 * a1 + disc
                                                              : -0.5 * a1 - disc;
                            double eq = probe(StageKind::quadratic, cq);
                            staged_done = std::abs(eq) <= tol;
                        }
                    }
                }
            }
        }
    } catch (const geodesic_error& ge) {
        if (!is_integration_failure(ge)) throw;
    }
    out.staged_convergence = staged_done;

    auto by_miss = [](const ShootStage& a, const ShootStage& b2) {
        return std::abs(a.error) < std::abs(b2.error);
    };

    if (!staged_done) {
        // Secant refinement on the two best probes seen so far.
        std::vector<ShootStage> ranked = out.stages;
        std::sort(ranked.begin(), ranked.end(), by_miss);
        double cb = ranked[0].c3, eb = ranked[0].error;
        double ca = cb, ea = eb;
        if (ranked.size() > 1) {
            ca = ranked[1].c3;
            ea = ranked[1].error;
        } else {
            ca = cb * 1.005;
            try {
                ea = probe(StageKind::refine, ca);
            } catch (const geodesic_error& ge) {
                if (!is_integration_failure(ge)) throw;
                throw geodesic_error(errc::solver_failure,
                                     "shooting startup produced no usable pair",
                                     std::abs(eb));
            }
        }

        for (int it = 0; it < 20 && std::abs(eb) > tol; ++it) {
            if (eb == ea) break;
            double cn = cb - eb * (cb - ca) / (eb - ea);
            double en = 0.0;
            bool ok = false;
            for (int halve = 0; halve < 10; ++halve) {
                try {
                    en = probe(StageKind::refine, cn);
                    ok = true;
                    break;
                } catch (const geodesic_error& ge) {
                    if (!is_integration_failure(ge)) throw;
                    cn = 0.5 * (cn + cb);  // retreat toward the best point
                }
            }
            if (!ok) break;
            if (std::abs(en) < std::abs(eb)) {
                ca = cb;
                ea = eb;
                cb = cn;
                eb = en;
            } else {
                ca = cn;
                ea = en;
            }
            if (std::abs(cb - ca) < 4e-16 * std::max(1.0, std::abs(cb))) break;
        }
    }

    const ShootStage& best =
        *std::min_element(out.stages.begin(), out.stages.end(), by_miss);
    if (!(std::abs(best.error) <= tol))
        throw geodesic_error(errc::solver_failure,
                             "endpoint miss never reached tolerance",
                             std::abs(best.error));
    out.c3 = best.c3;
    out.endpoint_error = best.error;
    return out;
}

}  // namespace isogeod
