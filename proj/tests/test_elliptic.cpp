#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "isogeod/elliptic.hpp"
#include "isogeod/error.hpp"
#include "isogeod/series.hpp"

using namespace isogeod;

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// Long-double Gauss-Legendre oracle, same scheme as in the series tests.
struct Gauss64 {
    std::vector<long double> x, w;
    Gauss64() : x(64), w(64) {
        const int n = 64;
        for (int i = 0; i < n; ++i) {
            long double z = cosl(kPiL * (i + 0.75L) / (n + 0.5L));
            long double pp = 0.0L;
            for (int it = 0; it < 100; ++it) {
                long double p1 = 1.0L, p2 = 0.0L;
                for (int j = 1; j <= n; ++j) {
                    long double p3 = p2;
                    p2 = p1;
                    p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0L);
                long double dz = p1 / pp;
                z -= dz;
                if (fabsl(dz) < 1e-19L) break;
            }
            x[i] = z;
            w[i] = 2.0L / ((1.0L - z * z) * pp * pp);
        }
    }
};

template <typename F>
long double integrate(F f, long double a, long double b, int panels = 8) {
    static const Gauss64 gl;
    long double total = 0.0L;
    for (int p = 0; p < panels; ++p) {
        long double pa = a + (b - a) * p / panels;
        long double pb = a + (b - a) * (p + 1) / panels;
        long double mid = 0.5L * (pa + pb), half = 0.5L * (pb - pa);
        long double acc = 0.0L;
        for (int i = 0; i < 64; ++i) acc += gl.w[i] * f(mid + half * gl.x[i]);
        total += half * acc;
    }
    return total;
}

// Sea-level integrands in long double, parametrized by the latitude angle
// u with tau = tau_m sin u (removes the vertex square root).
struct H0Exact {
    long double rho, e2, c3, tau_m;
    H0Exact(const Surface& s, double c3_in)
        : rho(s.ell.rho_e), e2((long double)s.ell.ecc * s.ell.ecc), c3(c3_in) {
        long double b = c3 / rho;
        tau_m = sqrtl((1.0L - b * b) / (1.0L - b * b * e2));
    }
    long double N(long double tau) const { return rho / sqrtl(1.0L - e2 * tau * tau); }
    long double M(long double tau) const {
        return N(tau) * (1.0L - e2) / (1.0L - e2 * tau * tau);
    }
    long double T(long double tau) const {
        long double r = c3 / N(tau);
        return 1.0L - tau * tau - r * r;
    }
    long double dlam_dtau(long double tau) const {
        long double n = N(tau);
        return c3 * M(tau) / (n * n * (1.0L - tau * tau) * sqrtl(T(tau)));
    }
    long double ds_dtau(long double tau) const { return M(tau) / sqrtl(T(tau)); }
    long double lam(long double tau) const {
        long double u1 = asinl(tau / tau_m);
        return integrate(
            [&](long double u) {
                long double t = tau_m * sinl(u);
                return dlam_dtau(t) * tau_m * cosl(u);
            },
            0.0L, u1);
    }
    long double dist(long double tau) const {
        long double u1 = asinl(tau / tau_m);
        return integrate(
            [&](long double u) {
                long double t = tau_m * sinl(u);
                return ds_dtau(t) * tau_m * cosl(u);
            },
            0.0L, u1);
    }
};

}  // namespace

TEST_CASE("Carlson forms: degenerate-argument identities") {
    for (double x : {0.25, 1.0, 7.3, 4.2e6}) {
        CHECK(carlson_rf(x, x, x) == doctest::Approx(1.0 / std::sqrt(x)).epsilon(1e-14));
        CHECK(carlson_rd(x, x, x) ==
              doctest::Approx(1.0 / (x * std::sqrt(x))).epsilon(1e-14));
        CHECK(carlson_rj(x, x, x, x) ==
              doctest::Approx(1.0 / (x * std::sqrt(x))).epsilon(1e-14));
        CHECK(carlson_rc(x, x) == doctest::Approx(1.0 / std::sqrt(x)).epsilon(1e-14));
    }
    // Homogeneity: scaling all arguments by k scales the value by 1/sqrt(k).
    double base = carlson_rf(0.3, 1.1, 2.7);
    for (double k : {4.0, 1e4}) {
        CHECK(carlson_rf(k * 0.3, k * 1.1, k * 2.7) ==
              doctest::Approx(base / std::sqrt(k)).epsilon(1e-12));
    }
    // RC is the x = y case of RF.
    CHECK(carlson_rc(0.4, 1.9) == doctest::Approx(carlson_rf(0.4, 1.9, 1.9)).epsilon(1e-13));
}

TEST_CASE("Carlson RF against direct quadrature") {
    // R_F(x,y,z) = (1/2) Int_0^inf dt / sqrt((t+x)(t+y)(t+z)). Substituting
    // t = tan(v)^2 maps the half line to (0, pi/2) with a bounded integrand.
    auto rf_quad = [](long double x, long double y, long double z) {
        return integrate(
            [&](long double v) {
                long double t = tanl(v);
                long double t2 = t * t;
                long double sec2 = 1.0L + t2;
                return t * sec2 / sqrtl((t2 + x) * (t2 + y) * (t2 + z));
            },
            0.0L, kPiL / 2, 16);
    };
    CHECK(carlson_rf(0.0, 1.0, 2.0) ==
          doctest::Approx((double)rf_quad(0.0L, 1.0L, 2.0L)).epsilon(1e-10));
    CHECK(carlson_rf(0.5, 1.0, 4.0) ==
          doctest::Approx((double)rf_quad(0.5L, 1.0L, 4.0L)).epsilon(1e-10));
}

TEST_CASE("Carlson domain violations throw") {
    CHECK_THROWS_AS(carlson_rf(-1.0, 1.0, 2.0), geodesic_error);
    CHECK_THROWS_AS(carlson_rf(0.0, 0.0, 2.0), geodesic_error);
    CHECK_THROWS_AS(carlson_rd(1.0, 1.0, 0.0), geodesic_error);
    CHECK_THROWS_AS(carlson_rj(1.0, 1.0, 1.0, 0.0), geodesic_error);
    CHECK_THROWS_AS(carlson_rc(1.0, 0.0), geodesic_error);
    try {
        carlson_rf(-1.0, 1.0, 2.0);
        FAIL("expected throw");
    } catch (const geodesic_error& ge) {
        CHECK(ge.code() == errc::bad_input);
    }
}

TEST_CASE("Legendre integrals against quadrature") {
    auto e_quad = [](long double phi, long double m) {
        return integrate(
            [&](long double t) {
                long double st = sinl(t);
                return sqrtl(1.0L - m * st * st);
            },
            0.0L, phi);
    };
    auto pi_quad = [](long double n, long double phi, long double m) {
        return integrate(
            [&](long double t) {
                long double st2 = sinl(t) * sinl(t);
                return 1.0L / ((1.0L - n * st2) * sqrtl(1.0L - m * st2));
            },
            0.0L, phi);
    };
    for (double m : {0.0, 0.1, 0.64, 0.95}) {
        for (double phi : {0.2, 0.9, 1.4, 1.5707963267948966}) {
            CHECK(legendre_e(phi, m) ==
                  doctest::Approx((double)e_quad(phi, m)).epsilon(1e-10));
            CHECK(legendre_e(-phi, m) == doctest::Approx(-legendre_e(phi, m)));
        }
        for (double n : {-0.5, 0.0, 0.3, 0.8}) {
            for (double phi : {0.3, 1.1, 1.5707963267948966}) {
                CHECK(legendre_pi(n, phi, m) ==
                      doctest::Approx((double)pi_quad(n, phi, m)).epsilon(1e-10));
                CHECK(legendre_pi(n, -phi, m) ==
                      doctest::Approx(-legendre_pi(n, phi, m)));
            }
        }
    }
    CHECK(legendre_e(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(legendre_e(1.6, 0.5), geodesic_error);
    CHECK_THROWS_AS(legendre_pi(0.3, 0.5, 1.5), geodesic_error);
}

TEST_CASE("sea-level geometry block") {
    Surface s(Ellipsoid(6378137.0, 0.25), 0.0);
    double c3 = 0.6 * 6378137.0;
    H0Geometry g = h0_geometry(s, c3);
    CHECK(g.b == doctest::Approx(0.6).epsilon(1e-15));
    double want_tm2 = (1 - 0.36) / (1 - 0.36 * 0.0625);
    CHECK(g.tau_m == doctest::Approx(std::sqrt(want_tm2)).epsilon(1e-14));
    CHECK(g.m == doctest::Approx(0.0625 * want_tm2).epsilon(1e-14));
    CHECK(g.n == doctest::Approx(want_tm2).epsilon(1e-14));
    CHECK_THROWS_AS(h0_geometry(Surface(s.ell, 100.0), c3), geodesic_error);
    CHECK_THROWS_AS(h0_geometry(s, 1.01 * 6378137.0), geodesic_error);
}

TEST_CASE("sea-level arcs against quadrature") {
    for (double e : {0.0818, 0.25}) {
        Surface s(Ellipsoid(6378137.0, e), 0.0);
        for (double bfrac : {0.3, 0.7, 0.9}) {
            double c3 = bfrac * 6378137.0;
            H0Exact ex(s, c3);
            for (double tfrac : {0.2, 0.6, 0.9}) {
                double tau = tfrac * (double)ex.tau_m;
                CHECK(std::abs(longitude_h0(s, tau, c3) - (double)ex.lam(tau)) <=
                      1e-10 * std::abs((double)ex.lam(tau)));
                CHECK(std::abs(distance_h0(s, tau, c3) - (double)ex.dist(tau)) <=
                      1e-10 * std::abs((double)ex.dist(tau)));
            }
            // Oddness in tau.
            double tau = 0.5 * (double)ex.tau_m;
            CHECK(longitude_h0(s, -tau, c3) ==
                  doctest::Approx(-longitude_h0(s, tau, c3)).epsilon(1e-14));
            CHECK(distance_h0(s, -tau, c3) ==
                  doctest::Approx(-distance_h0(s, tau, c3)).epsilon(1e-14));
            // Turn values are the tau -> tau_m limits. Evaluating exactly at
            // the vertex is sqrt(eps)-sensitive (arcsin of 1 - one ulp), so
            // allow ~1e-8 against the measured worst of 2e-10.
            CHECK(distance_h0_turn(s, c3) ==
                  doctest::Approx(distance_h0(s, (double)ex.tau_m, c3)).epsilon(1e-8));
            CHECK(longitude_h0_turn(s, c3) ==
                  doctest::Approx(longitude_h0(s, (double)ex.tau_m, c3)).epsilon(1e-8));
        }
    }
}

TEST_CASE("sea-level arcs against the series at small eccentricity") {
    Surface s(Ellipsoid(6378137.0, 1e-3), 0.0);
    double c3 = 0.55 * 6378137.0;
    H0Exact ex(s, c3);
    for (double tfrac : {0.3, 0.8}) {
        double tau = tfrac * (double)ex.tau_m;
        double lam_c = longitude_h0(s, tau, c3);
        double lam_s = lambda_underivative(s, tau, c3, 4);
        CHECK(std::abs(lam_c - lam_s) <= 1e-12 * std::abs(lam_c));
        double s_c = distance_h0(s, tau, c3);
        double s_s = distance_underivative(s, tau, c3, 4);
        CHECK(std::abs(s_c - s_s) <= 1e-12 * std::abs(s_c));
    }
    CHECK(std::abs(longitude_h0_turn(s, c3) - lambda_turn_value(s, c3, 4)) <=
          1e-12 * std::abs(longitude_h0_turn(s, c3)));
    CHECK(std::abs(distance_h0_turn(s, c3) - distance_turn_value(s, c3, 4)) <=
          1e-12 * std::abs(distance_h0_turn(s, c3)));
}

TEST_CASE("series-vs-closed-form gap scales like the sixth power of e") {
    // Halving e should shrink the order-4 truncation error by about 2^6.
    auto gap = [](double e) {
        Surface s(Ellipsoid(6378137.0, e), 0.0);
        double c3 = 0.5 * 6378137.0;
        H0Exact ex(s, c3);
        double tau = 0.7 * (double)ex.tau_m;
        return std::abs(distance_h0(s, tau, c3) - distance_underivative(s, tau, c3, 4));
    };
    double ratio = gap(0.2) / gap(0.1);
    CHECK(ratio > 64.0 / 4.0);
    CHECK(ratio < 64.0 * 4.0);
}

TEST_CASE("sea-level error paths") {
    Surface s(Ellipsoid(6378137.0, 0.2), 0.0);
    double c3 = 0.8 * 6378137.0;
    H0Geometry g = h0_geometry(s, c3);
    CHECK_THROWS_AS(distance_h0(s, g.tau_m * 1.01, c3), geodesic_error);
    try {
        longitude_h0(s, g.tau_m * 1.01, c3);
        FAIL("expected throw");
    } catch (const geodesic_error& ge) {
        CHECK(ge.code() == errc::beyond_solstice);
    }
    // Meridian: no longitude is swept regardless of tau.
    CHECK(longitude_h0(s, 0.7, 0.0) == 0.0);
    Surface lifted(s.ell, 1000.0);
    CHECK_THROWS_AS(distance_h0(lifted, 0.3, c3), geodesic_error);
}
