#include "isogeod/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "isogeod/error.hpp"

namespace isogeod {

namespace {

// Duplication stops once the arguments agree to this relative spread; the
// truncated Taylor tail then contributes far below double rounding.
constexpr double kSpreadTol = 1e-16;
constexpr int kMaxDuplications = 200;

void require_rf_domain(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0)
        throw geodesic_error(errc::bad_input, "carlson: negative argument");
    if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1)
        throw geodesic_error(errc::bad_input, "carlson: more than one zero argument");
}

}  // namespace

double carlson_rf(double x, double y, double z) {
    require_rf_domain(x, y, z);
    double dx = 0.0, dy = 0.0, dz = 0.0, mu = 1.0;
    for (int it = 0; it < kMaxDuplications; ++it) {
        double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        double lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        mu = (x + y + z) / 3.0;
        dx = (mu - x) / mu;
        dy = (mu - y) / mu;
        dz = (mu - z) / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kSpreadTol) break;
    }
    double e2 = dx * dy - dz * dz;
    double e3 = dx * dy * dz;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
    require_rf_domain(x, y, z);
    if (z == 0.0)
        throw geodesic_error(errc::bad_input, "carlson_rd: z must be positive");
    double sum = 0.0, fac = 1.0;
    double dx = 0.0, dy = 0.0, dz = 0.0, mu = 1.0;
    for (int it = 0; it < kMaxDuplications; ++it) {
        double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        double lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        mu = 0.2 * (x + y + 3.0 * z);
        dx = (mu - x) / mu;
        dy = (mu - y) / mu;
        dz = (mu - z) / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kSpreadTol) break;
    }
    double ea = dx * dy;
    double eb = dz * dz;
    double ec = ea - eb;
    double ed = ea - 6.0 * eb;
    double ee = ed + ec + ec;
    double tail = 1.0 + ed * (-3.0 / 14.0 + (9.0 / 88.0) * ed - (4.5 / 26.0) * dz * ee) +
                  dz * ((1.0 / 6.0) * ee + dz * (-(9.0 / 22.0) * ec + dz * (3.0 / 26.0) * ea));
    return 3.0 * sum + fac * tail / (mu * std::sqrt(mu));
}

double carlson_rj(double x, double y, double z, double p) {
    require_rf_domain(x, y, z);
    if (p <= 0.0)
        throw geodesic_error(errc::bad_input, "carlson_rj: p must be positive");
    double sum = 0.0, fac = 1.0;
    double dx = 0.0, dy = 0.0, dz = 0.0, dp = 0.0, mu = 1.0;
    for (int it = 0; it < kMaxDuplications; ++it) {
        double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        double lam = sx * (sy + sz) + sy * sz;
        double alpha = p * (sx + sy + sz) + sx * sy * sz;
        alpha *= alpha;
        double beta = p * (p + lam) * (p + lam);
        sum += fac * carlson_rc(alpha, beta);
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        p = 0.25 * (p + lam);
        mu = 0.2 * (x + y + z + 2.0 * p);
        dx = (mu - x) / mu;
        dy = (mu - y) / mu;
        dz = (mu - z) / mu;
        dp = (mu - p) / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(dp)}) < kSpreadTol)
            break;
    }
    double ea = dx * (dy + dz) + dy * dz;
    double eb = dx * dy * dz;
    double ec = dp * dp;
    double ed = ea - 3.0 * ec;
    double ee = eb + 2.0 * dp * (ea - ec);
    double tail = 1.0 + ed * (-3.0 / 14.0 + (9.0 / 88.0) * ed - (4.5 / 26.0) * ee) +
                  eb * (1.0 / 6.0 + dp * (-6.0 / 22.0 + dp * (3.0 / 26.0))) +
                  dp * ea * (1.0 / 3.0 - dp * (3.0 / 22.0)) - (1.0 / 3.0) * dp * ec;
    return 3.0 * sum + fac * tail / (mu * std::sqrt(mu));
}

double carlson_rc(double x, double y) {
    if (x < 0.0 || y <= 0.0)
        throw geodesic_error(errc::bad_input, "carlson_rc: need x >= 0, y > 0");
    double s = 0.0, mu = 1.0;
    for (int it = 0; it < kMaxDuplications; ++it) {
        double lam = 2.0 * std::sqrt(x) * std::sqrt(y) + y;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        mu = (x + 2.0 * y) / 3.0;
        s = (y - mu) / mu;
        if (std::abs(s) < kSpreadTol) break;
    }
    return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * (9.0 / 22.0))))) /
           std::sqrt(mu);
}

double legendre_e(double phi, double m) {
    if (phi < 0.0) return -legendre_e(-phi, m);
    if (!(phi <= 1.5707963267948967) || m < 0.0 || m > 1.0)
        throw geodesic_error(errc::bad_input, "legendre_e: phi or parameter out of range");
    double sp = std::sin(phi), cp = std::cos(phi);
    double c2 = cp * cp;
    double q = std::max(1.0 - m * sp * sp, 0.0);
    return sp * carlson_rf(c2, q, 1.0) - (m * sp * sp * sp / 3.0) * carlson_rd(c2, q, 1.0);
}

double legendre_pi(double n, double phi, double m) {
    if (phi < 0.0) return -legendre_pi(n, -phi, m);
    if (!(phi <= 1.5707963267948967) || m < 0.0 || m > 1.0)
        throw geodesic_error(errc::bad_input, "legendre_pi: phi or parameter out of range");
    double sp = std::sin(phi), cp = std::cos(phi);
    double c2 = cp * cp;
    double q = std::max(1.0 - m * sp * sp, 0.0);
    double p = 1.0 - n * sp * sp;
    return sp * carlson_rf(c2, q, 1.0) + (n * sp * sp * sp / 3.0) * carlson_rj(c2, q, 1.0, p);
}

H0Geometry h0_geometry(const Surface& s, double c3) {
    if (s.h != 0.0)
        throw geodesic_error(errc::bad_input, "h0 closed form needs h = 0");
    double rho = s.ell.rho_e;
    if (std::abs(c3) > rho)
        throw geodesic_error(errc::bad_input, "|c3| exceeds equator radius");
    double e2 = s.ell.ecc * s.ell.ecc;
    double b = c3 / rho;
    double tm2 = (1.0 - b * b) / (1.0 - b * b * e2);
    H0Geometry g;
    g.b = b;
    g.tau_m = std::sqrt(tm2);
    g.m = e2 * tm2;
    g.n = tm2;
    return g;
}

double distance_h0(const Surface& s, double tau, double c3) {
    H0Geometry g = h0_geometry(s, c3);
    double rho = s.ell.rho_e;
    double e2 = s.ell.ecc * s.ell.ecc;
    double ratio = tau / g.tau_m;
    if (std::abs(ratio) > 1.0 + 1e-12)
        throw geodesic_error(errc::beyond_solstice, "latitude beyond the turning point");
    ratio = std::clamp(ratio, -1.0, 1.0);
    double u = std::asin(ratio);
    double w = std::sqrt(1.0 - g.b * g.b * e2);
    double rad = std::max((1.0 - tau * tau) / (1.0 - e2 * tau * tau) - g.b * g.b, 0.0);
    return rho * (w * legendre_e(u, g.m) - e2 * tau * std::sqrt(rad));
}

double longitude_h0(const Surface& s, double tau, double c3) {
    H0Geometry g = h0_geometry(s, c3);
    if (c3 == 0.0) return 0.0;  // meridian: no longitude is swept
    double e2 = s.ell.ecc * s.ell.ecc;
    double ratio = tau / g.tau_m;
    if (std::abs(ratio) > 1.0 + 1e-12)
        throw geodesic_error(errc::beyond_solstice, "latitude beyond the turning point");
    ratio = std::clamp(ratio, -1.0, 1.0);
    double u = std::asin(ratio);
    double w = std::sqrt(1.0 - g.b * g.b * e2);
    return g.b * (1.0 - e2) / w * legendre_pi(g.n, u, g.m);
}

double distance_h0_turn(const Surface& s, double c3) {
    H0Geometry g = h0_geometry(s, c3);
    double e2 = s.ell.ecc * s.ell.ecc;
    double w = std::sqrt(1.0 - g.b * g.b * e2);
    return s.ell.rho_e * w * legendre_e(1.5707963267948966, g.m);
}

double longitude_h0_turn(const Surface& s, double c3) {
    H0Geometry g = h0_geometry(s, c3);
    if (c3 == 0.0) return 0.0;
    double e2 = s.ell.ecc * s.ell.ecc;
    double w = std::sqrt(1.0 - g.b * g.b * e2);
    return g.b * (1.0 - e2) / w * legendre_pi(g.n, 1.5707963267948966, g.m);
}

}  // namespace isogeod
