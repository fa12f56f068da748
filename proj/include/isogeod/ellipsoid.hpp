#pragma once

#include <Eigen/Core>

#include "isogeod/error.hpp"

// Biaxial ellipsoid geometry and the iso-altitude surface built on top of it.
// Latitude is carried as tau = sin(phi) wherever possible; phi itself only
// appears at API boundaries (inputs from callers, formatted output).

namespace isogeod {

// Shape of a biaxial ellipsoid: equatorial radius rho_e and first
// eccentricity e. The polar radius is rho_e*sqrt(1-e^2).
struct Ellipsoid {
    Ellipsoid(double equatorial_radius, double eccentricity);

    static Ellipsoid from_inverse_flattening(double equatorial_radius, double inv_f);

    double polar_radius() const;
    double flattening() const;

    double rho_e;
    double ecc;
};

// Reference ellipsoids (name -> rho_e [m], inverse flattening).
Ellipsoid wgs84();     // 6378137.0, 298.257223563
Ellipsoid grs80();     // 6378137.0, 298.257222101
Ellipsoid iers_tn32(); // 6378136.6, 298.25642
Ellipsoid iers_tn21(); // 6378136.49, 298.25642

// e = sqrt(f(2-f)) and the exact inverse f = e^2/(1+sqrt(1-e^2)).
// Both reject inputs outside [0, 1).
double ecc_from_flattening(double f);
double flattening_from_ecc(double e);

// Difference v = phi - phi' between geodetic and geocentric latitude as a
// Fourier series in m = e^2/(2-e^2):
//   v = sum_{k>=1} (-1)^(k+1) (m^k/k) sin(2k phi)
// truncated after `terms` terms. v_series_coefficient returns the k-th
// coefficient (-1)^(k+1) m^k/k in radians.
double latitude_difference(const Ellipsoid& ell, double phi, int terms = 3);
double v_series_coefficient(const Ellipsoid& ell, int k);

// Trajectory surface: all points at perpendicular altitude h above the
// ellipsoid. h may be negative but must stay above -rho_e*(1-e^2), where the
// meridional curvature center crosses the surface.
struct Surface {
    Surface(Ellipsoid ellipsoid, double altitude);

    // Radius of the surface at the equator, rho_e + h. Written H in the
    // derivation comments throughout this library.
    double H() const { return ell.rho_e + h; }

    Ellipsoid ell;
    double h;
};

// Two geodetic endpoints of an inverse problem, angles in radians.
struct Boundary {
    double phi1;
    double lambda1;
    double phi2;
    double lambda2;
};

// Prime-vertical curvature radius N = rho_e/sqrt(1-e^2 tau^2) and meridional
// curvature radius M = N(1-e^2)/(1-e^2 tau^2).
double radius_N(const Ellipsoid& ell, double tau);
double radius_M(const Ellipsoid& ell, double tau);
inline double radius_N(const Surface& s, double tau) { return radius_N(s.ell, tau); }
inline double radius_M(const Surface& s, double tau) { return radius_M(s.ell, tau); }

struct CurvatureDerivs {
    double dN;   // dN/dtau
    double dM;   // dM/dtau
    double d2M;  // d2M/dtau2
};

CurvatureDerivs curvature_derivatives(const Ellipsoid& ell, double tau);
inline CurvatureDerivs curvature_derivatives(const Surface& s, double tau) {
    return curvature_derivatives(s.ell, tau);
}

namespace detail {

// Full radius/derivative bundle used by the metric and the mesh integrator.
struct RadiusDerivs {
    double N, dN, d2N;
    double M, dM, d2M;
};

RadiusDerivs radius_derivs(const Ellipsoid& ell, double tau);

}  // namespace detail

// Geocentric Cartesian position of (phi, lambda) on the surface:
//   x = (N+h) cos(phi) cos(lambda)
//   y = (N+h) cos(phi) sin(lambda)
//   z = (N(1-e^2)+h) sin(phi)
Eigen::Vector3d to_cartesian(const Surface& s, double phi, double lambda);

// Tangent vectors d(r)/d(lambda) and d(r)/d(phi) of the surface chart.
// |e_lambda|^2 = E, |e_phi|^2 = G, and they are orthogonal. At the poles
// e_lambda degenerates to the zero vector (no error is raised).
struct TopocentricBasis {
    Eigen::Vector3d e_lambda;
    Eigen::Vector3d e_phi;
};

TopocentricBasis topocentric_basis(const Surface& s, double phi, double lambda);

}  // namespace isogeod
