#pragma once

#include "isogeod/ellipsoid.hpp"

// Closed-form arcs on the h = 0 surface via Legendre integrals, plus the
// Carlson symmetric forms they reduce to.  Used as the reference route for
// sea-level paths; the series and shooting solvers are checked against it.

namespace isogeod {

// Carlson symmetric integrals, evaluated by argument duplication.
// R_F, R_D require x, y, z >= 0 with at most one of them zero; R_J
// additionally needs p > 0.  Violations throw errc::bad_input.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
double carlson_rj(double x, double y, double z, double p);
double carlson_rc(double x, double y);

// Incomplete Legendre integrals, phi in [-pi/2, pi/2], parameter m = k^2.
// legendre_e:  integral of sqrt(1 - m sin^2 t) dt from 0 to phi.
// legendre_pi: integral of dt / ((1 - n sin^2 t) sqrt(1 - m sin^2 t)).
double legendre_e(double phi, double m);
double legendre_pi(double n, double phi, double m);

// Geometry of a sea-level path with launching constant c3: normalized
// constant b, turning latitude sine tau_m, and the modulus/characteristic
// of the Legendre reduction.
struct H0Geometry {
    double b;        // c3 / rho_e
    double tau_m;    // sine of the turning latitude
    double m;        // modulus^2 = e^2 tau_m^2
    double n;        // characteristic = tau_m^2
};

H0Geometry h0_geometry(const Surface& s, double c3);

// Arc length and longitude swept from the equator crossing to latitude
// sine tau, for a surface with h = 0 (anything else throws bad_input).
// |tau| beyond the turning latitude throws beyond_solstice.
double distance_h0(const Surface& s, double tau, double c3);
double longitude_h0(const Surface& s, double tau, double c3);

// Values at the turning point itself (quarter arc from the equator).
double distance_h0_turn(const Surface& s, double c3);
double longitude_h0_turn(const Surface& s, double c3);

}  // namespace isogeod
