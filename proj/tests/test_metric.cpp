#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "isogeod/error.hpp"
#include "isogeod/metric.hpp"

using namespace isogeod;

namespace {

constexpr double kPi = 3.141592653589793;

// Christoffel symbols recovered from finite differences of the chart's
// tangent vectors: Gamma^k_ij = (d e_i / d x^j) . e_k / |e_k|^2, using the
// orthogonality of the basis. Entirely independent of the closed forms.
struct FdChristoffel {
    double phi_lambda_lambda, lambda_phi_lambda, phi_phi_phi;
};

FdChristoffel fd_christoffel(const Surface& s, double phi) {
    const double lam = 0.0;
    const double d = 1e-6;
    TopocentricBasis at = topocentric_basis(s, phi, lam);
    Eigen::Vector3d de_lam_dlam =
        (topocentric_basis(s, phi, lam + d).e_lambda -
         topocentric_basis(s, phi, lam - d).e_lambda) /
        (2 * d);
    Eigen::Vector3d de_lam_dphi =
        (topocentric_basis(s, phi + d, lam).e_lambda -
         topocentric_basis(s, phi - d, lam).e_lambda) /
        (2 * d);
    Eigen::Vector3d de_phi_dphi =
        (topocentric_basis(s, phi + d, lam).e_phi -
         topocentric_basis(s, phi - d, lam).e_phi) /
        (2 * d);
    double e_sq = at.e_lambda.squaredNorm();
    double g_sq = at.e_phi.squaredNorm();
    return {de_lam_dlam.dot(at.e_phi) / g_sq, de_lam_dphi.dot(at.e_lambda) / e_sq,
            de_phi_dphi.dot(at.e_phi) / g_sq};
}

}  // namespace

TEST_CASE("fundamental forms against their defining radii") {
    for (double h : {0.0, 400000.0, -5000.0}) {
        Surface s(wgs84(), h);
        for (double tau : {-0.95, -0.4, 0.0, 0.3, 0.88}) {
            FundamentalForms ff = fundamental_forms(s, tau);
            double nh = radius_N(s, tau) + h;
            double mh = radius_M(s, tau) + h;
            CHECK(ff.E == doctest::Approx(nh * nh * (1 - tau * tau)).epsilon(1e-15));
            CHECK(ff.F == 0.0);
            CHECK(ff.G == doctest::Approx(mh * mh).epsilon(1e-15));
        }
    }
    // Sphere limit: E = (rho+h)^2 cos^2, G = (rho+h)^2.
    Surface sp(Ellipsoid(1000.0, 0.0), 10.0);
    FundamentalForms ff = fundamental_forms(sp, 0.6);
    CHECK(ff.E == doctest::Approx(1010.0 * 1010.0 * (1 - 0.36)).epsilon(1e-15));
    CHECK(ff.G == doctest::Approx(1010.0 * 1010.0).epsilon(1e-15));
}

TEST_CASE("metric derivatives match finite differences of E") {
    for (double e : {0.0, 0.0818191908426215, 0.4}) {
        Surface s(Ellipsoid(6378137.0, e), 200000.0);
        // Explicit grid: an accumulated loop lands on tau ~ -6e-17, where the
        // finite difference of E is pure cancellation noise.
        for (double tau : {-0.9, -0.75, -0.6, -0.45, -0.3, -0.15, 0.0,
                           0.15, 0.3, 0.45, 0.6, 0.75, 0.9}) {
            MetricDerivs md = fundamental_form_derivatives(s, tau);
            double d = 1e-6;
            double fd1 = (fundamental_forms(s, tau + d).E - fundamental_forms(s, tau - d).E) / (2 * d);
            double fd2 = (fundamental_forms(s, tau + d).E - 2 * fundamental_forms(s, tau).E +
                          fundamental_forms(s, tau - d).E) /
                         (d * d);
            CHECK(std::abs(fd1 - md.dE) <= 1e-6 * std::max(std::abs(md.dE), 1.0));
            CHECK(std::abs(fd2 - md.d2E) <= 1e-3 * std::max(std::abs(md.d2E), 1.0));
        }
        // dE/dtau vanishes at the equator by symmetry.
        CHECK(fundamental_form_derivatives(s, 0.0).dE == 0.0);
    }
}

TEST_CASE("christoffel symbols: sphere limit and pole behavior") {
    Surface sp(Ellipsoid(6378137.0, 0.0), 0.0);
    for (double phi : {-1.2, -0.3, 0.25, 1.0}) {
        Christoffel c = christoffel(sp, std::sin(phi));
        CHECK(c.phi_lambda_lambda ==
              doctest::Approx(std::sin(phi) * std::cos(phi)).epsilon(1e-12));
        CHECK(c.lambda_phi_lambda == doctest::Approx(-std::tan(phi)).epsilon(1e-12));
        CHECK(c.phi_phi_phi == 0.0);
    }
    Christoffel eq = christoffel(sp, 0.0);
    CHECK(eq.phi_lambda_lambda == 0.0);
    CHECK(eq.lambda_phi_lambda == 0.0);

    CHECK_THROWS_AS(christoffel(sp, 1.0), geodesic_error);
    try {
        christoffel(sp, -1.0);
        FAIL("expected throw");
    } catch (const geodesic_error& ge) {
        CHECK(ge.code() == errc::pole_singularity);
    }
}

TEST_CASE("christoffel symbols match the basis-vector finite differences") {
    for (double h : {0.0, 400000.0}) {
        for (double e : {0.0, 0.15, 0.3}) {
            Surface s(Ellipsoid(6378137.0, e), h);
            for (double phi_deg : {-75.0, -30.0, 10.0, 55.0, 82.0}) {
                double phi = phi_deg * kPi / 180.0;
                Christoffel c = christoffel(s, std::sin(phi));
                FdChristoffel fd = fd_christoffel(s, phi);
                auto close = [](double a, double b) {
                    return std::abs(a - b) <= 1e-6 * std::max(std::abs(b), 1e-3);
                };
                CHECK(close(fd.phi_lambda_lambda, c.phi_lambda_lambda));
                CHECK(close(fd.lambda_phi_lambda, c.lambda_phi_lambda));
                CHECK(close(fd.phi_phi_phi, c.phi_phi_phi));
            }
        }
    }
}
