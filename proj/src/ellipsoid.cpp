#include "isogeod/ellipsoid.hpp"

#include <cmath>

namespace isogeod {

Ellipsoid::Ellipsoid(double equatorial_radius, double eccentricity)
    : rho_e(equatorial_radius), ecc(eccentricity) {
    if (!(rho_e > 0.0))
        throw geodesic_error(errc::bad_input, "equatorial radius must be positive");
    if (!(ecc >= 0.0 && ecc < 1.0))
        throw geodesic_error(errc::bad_input, "eccentricity must lie in [0, 1)");
}

Ellipsoid Ellipsoid::from_inverse_flattening(double equatorial_radius, double inv_f) {
    if (!(inv_f > 1.0))
        throw geodesic_error(errc::bad_input, "inverse flattening must exceed 1");
    return Ellipsoid(equatorial_radius, ecc_from_flattening(1.0 / inv_f));
}

double Ellipsoid::polar_radius() const { return rho_e * std::sqrt(1.0 - ecc * ecc); }

double Ellipsoid::flattening() const { return flattening_from_ecc(ecc); }

Ellipsoid wgs84() { return Ellipsoid::from_inverse_flattening(6378137.0, 298.257223563); }
Ellipsoid grs80() { return Ellipsoid::from_inverse_flattening(6378137.0, 298.257222101); }
Ellipsoid iers_tn32() { return Ellipsoid::from_inverse_flattening(6378136.6, 298.25642); }
Ellipsoid iers_tn21() { return Ellipsoid::from_inverse_flattening(6378136.49, 298.25642); }

double ecc_from_flattening(double f) {
    if (!(f >= 0.0 && f < 1.0))
        throw geodesic_error(errc::bad_input, "flattening must lie in [0, 1)");
    return std::sqrt(f * (2.0 - f));
}

double flattening_from_ecc(double e) {
    if (!(e >= 0.0 && e < 1.0))
        throw geodesic_error(errc::bad_input, "eccentricity must lie in [0, 1)");
    // 1 - sqrt(1-e^2), written without cancellation for small e.
    return e * e / (1.0 + std::sqrt(1.0 - e * e));
}

double v_series_coefficient(const Ellipsoid& ell, int k) {
    if (k < 1) throw geodesic_error(errc::bad_input, "series index must be >= 1");
    const double e2 = ell.ecc * ell.ecc;
    const double m = e2 / (2.0 - e2);
    double c = std::pow(m, k) / k;
    return (k % 2 == 0) ? -c : c;
}

double latitude_difference(const Ellipsoid& ell, double phi, int terms) {
    if (terms < 1) throw geodesic_error(errc::bad_input, "series needs at least one term");
    const double e2 = ell.ecc * ell.ecc;
    const double m = e2 / (2.0 - e2);
    double v = 0.0;
    double mk = 1.0;
    for (int k = 1; k <= terms; ++k) {
        mk *= m;
        const double c = mk / k;
        v += (k % 2 == 0) ? -c * std::sin(2.0 * k * phi) : c * std::sin(2.0 * k * phi);
    }
    return v;
}

Surface::Surface(Ellipsoid ellipsoid, double altitude) : ell(ellipsoid), h(altitude) {
    const double e2 = ell.ecc * ell.ecc;
    if (!(h > -ell.rho_e * (1.0 - e2)))
        throw geodesic_error(errc::bad_input,
                             "altitude must stay above -rho_e*(1-e^2)");
}

double radius_N(const Ellipsoid& ell, double tau) {
    const double e2 = ell.ecc * ell.ecc;
    return ell.rho_e / std::sqrt(1.0 - e2 * tau * tau);
}

double radius_M(const Ellipsoid& ell, double tau) {
    const double e2 = ell.ecc * ell.ecc;
    return radius_N(ell, tau) * (1.0 - e2) / (1.0 - e2 * tau * tau);
}

CurvatureDerivs curvature_derivatives(const Ellipsoid& ell, double tau) {
    const auto d = detail::radius_derivs(ell, tau);
    return {d.dN, d.dM, d.d2M};
}

namespace detail {

RadiusDerivs radius_derivs(const Ellipsoid& ell, double tau) {
    const double e2 = ell.ecc * ell.ecc;
    const double u = 1.0 - e2 * tau * tau;
    const double N = ell.rho_e / std::sqrt(u);
    const double M = N * (1.0 - e2) / u;
    RadiusDerivs d;
    d.N = N;
    d.dN = N * e2 * tau / u;
    d.d2N = N * e2 / u + 3.0 * N * e2 * e2 * tau * tau / (u * u);
    d.M = M;
    d.dM = 3.0 * M * e2 * tau / u;
    d.d2M = 3.0 * M * e2 * (1.0 + 4.0 * e2 * tau * tau) / (u * u);
    return d;
}

}  // namespace detail

Eigen::Vector3d to_cartesian(const Surface& s, double phi, double lambda) {
    const double tau = std::sin(phi);
    const double cphi = std::cos(phi);
    const double e2 = s.ell.ecc * s.ell.ecc;
    const double N = radius_N(s.ell, tau);
    return {(N + s.h) * cphi * std::cos(lambda),
            (N + s.h) * cphi * std::sin(lambda),
            (N * (1.0 - e2) + s.h) * tau};
}

TopocentricBasis topocentric_basis(const Surface& s, double phi, double lambda) {
    const double tau = std::sin(phi);
    const double cphi = std::cos(phi);
    const double cl = std::cos(lambda);
    const double sl = std::sin(lambda);
    const double N = radius_N(s.ell, tau);
    const double M = radius_M(s.ell, tau);
    TopocentricBasis b;
    b.e_lambda = Eigen::Vector3d(-(N + s.h) * cphi * sl, (N + s.h) * cphi * cl, 0.0);
    b.e_phi = (M + s.h) * Eigen::Vector3d(-tau * cl, -tau * sl, cphi);
    return b;
}

}  // namespace isogeod
