#include "isogeod/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace isogeod {

double dlambda_ds(const Surface& s, double tau, double c3) {
    if (std::abs(tau) >= 1.0)
        throw geodesic_error(errc::pole_singularity, "E vanishes at the poles");
    const double Nh = radius_N(s.ell, tau) + s.h;
    return c3 / (Nh * Nh * (1.0 - tau * tau));
}

Discriminant discriminant(const Surface& s, double tau, double c3) {
    const auto d = detail::radius_derivs(s.ell, tau);
    const double Nh = d.N + s.h;
    const double x = c3 / Nh;
    Discriminant out;
    out.T = 1.0 - tau * tau - x * x;
    out.dT = -2.0 * tau + 2.0 * c3 * c3 * d.dN / (Nh * Nh * Nh);
    out.d2T = -2.0 + 2.0 * c3 * c3 * (d.d2N * Nh - 3.0 * d.dN * d.dN) / (Nh * Nh * Nh * Nh);
    return out;
}

double dtau_ds(const Surface& s, double tau, double c3, int north) {
    const double T = discriminant(s, tau, c3).T;
    if (T < 0.0)
        throw geodesic_error(errc::beyond_solstice, "latitude beyond the turning point");
    return north * std::sqrt(T) / (radius_M(s.ell, tau) + s.h);
}

double dtau_dlambda(const Surface& s, double tau, double c3, int north) {
    if (c3 == 0.0)
        throw geodesic_error(errc::meridian_degenerate,
                             "meridians cannot be parametrized by longitude");
    const double T = discriminant(s, tau, c3).T;
    if (T < 0.0)
        throw geodesic_error(errc::beyond_solstice, "latitude beyond the turning point");
    const double Nh = radius_N(s.ell, tau) + s.h;
    const double Mh = radius_M(s.ell, tau) + s.h;
    const double E = Nh * Nh * (1.0 - tau * tau);
    return north * std::sqrt(T) * E / (c3 * Mh);
}

std::array<double, 5> solstice_quartic(const Surface& s, double c3) {
    const double rho = s.ell.rho_e;
    const double h = s.h;
    const double e2 = s.ell.ecc * s.ell.ecc;
    const double r2 = rho * rho, h2 = h * h, c2 = c3 * c3;
    const double rp = (rho + h) * (rho + h);
    const double rm = (rho - h) * (rho - h);
    const double d2 = (r2 - h2) * (r2 - h2);
    return {
        (rp - c2) * (rm - c2),
        2.0 * (-d2 + c2 * (r2 + h2) + e2 * (-(c2 - h2) * (c2 - h2) + r2 * (c2 + h2))),
        d2 + 2.0 * e2 * (2.0 * h2 * h2 - 2.0 * c2 * h2 - 2.0 * r2 * h2 - r2 * c2) +
            e2 * e2 * (c2 - h2) * (c2 - h2),
        2.0 * h2 * e2 * (r2 - h2 + e2 * (c2 - h2)),
        h2 * h2 * e2 * e2,
    };
}

namespace {

// Exact turning-point residual (1-tau^2)(N+h)^2 - c3^2; strictly decreasing
// in tau on [0,1] for any valid surface, which makes bisection safe.
double turning_residual(const Surface& s, double tau, double c3) {
    const double Nh = radius_N(s.ell, tau) + s.h;
    return (1.0 - tau * tau) * Nh * Nh - c3 * c3;
}

}  // namespace

double tau_tropic(const Surface& s, double c3) {
    const double H = s.H();
    if (!(std::abs(c3) <= H))
        throw geodesic_error(errc::bad_input, "|c3| must not exceed rho_e + h");
    if (c3 == 0.0) return 1.0;

    const double tol = 1e-12 * H * H;
    const double e2 = s.ell.ecc * s.ell.ecc;
    const double k = c3 / H;
    const double rb = s.ell.rho_e / H;
    const double k2 = k * k;

    // Truncated-series seed for the turning latitude, then 4 Newton steps on
    // the quartic in x = tau_m^2.
    double seed = std::sqrt(std::max(1.0 - k2, 0.0)) *
                  (1.0 + 0.5 * k2 * rb * e2 -
                   (3.0 / 8.0) * k2 * rb * ((rb - k2) * (rb - k2) - 1.0) * e2 * e2);
    seed = std::clamp(seed, 0.0, 1.0);

    const auto q = solstice_quartic(s, c3);
    double x = seed * seed;
    for (int i = 0; i < 4; ++i) {
        const double f = (((q[4] * x + q[3]) * x + q[2]) * x + q[1]) * x + q[0];
        const double df = ((4.0 * q[4] * x + 3.0 * q[3]) * x + 2.0 * q[2]) * x + q[1];
        if (df == 0.0) break;
        x = std::clamp(x - f / df, 0.0, 1.0);
    }

    double tau = std::sqrt(std::clamp(x, 0.0, 1.0));
    if (std::abs(turning_residual(s, tau, c3)) <= tol) return tau;

    // Newton landed off the physical root (or converged too slowly): polish
    // with bisection on the exact residual.
    double lo = 0.0, hi = 1.0;
    double flo = turning_residual(s, lo, c3);
    if (flo < 0.0)
        throw geodesic_error(errc::no_solstice, "no turning latitude for this c3");
    for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = turning_residual(s, mid, c3);
        if (fm >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    tau = 0.5 * (lo + hi);
    if (std::abs(turning_residual(s, tau, c3)) > tol)
        throw geodesic_error(errc::no_solstice, "turning-point solve failed",
                             turning_residual(s, tau, c3));
    return tau;
}

double nautical_angle(const Surface& s, double tau, double c3, int north) {
    const double T = discriminant(s, tau, c3).T;
    if (T < 0.0)
        throw geodesic_error(errc::beyond_solstice, "latitude beyond the turning point");
    const double Nh = radius_N(s.ell, tau) + s.h;
    const double east = (c3 == 0.0) ? 0.0 : c3 / Nh;  // avoid atan2(-0, x) edge
    return std::atan2(east, north * std::sqrt(T));
}

double unit_speed_residual(const Surface& s, double tau, double c3) {
    const double Nh = radius_N(s.ell, tau) + s.h;
    const double one_m_t2 = 1.0 - tau * tau;
    const double E = Nh * Nh * one_m_t2;
    const double T = discriminant(s, tau, c3).T;
    const double a = (c3 == 0.0) ? 0.0 : c3 * c3 / E;
    const double b = (one_m_t2 > 0.0) ? std::max(T, 0.0) / one_m_t2 : 1.0;
    return std::abs(a + b - 1.0);
}

}  // namespace isogeod
