#pragma once

#include <array>

#include "isogeod/ellipsoid.hpp"

// Exact differential geometry of geodesics on the iso-altitude surface.
// A geodesic is indexed by its first integral c3 (Clairaut-type constant):
//   dlambda/ds = c3 / E(tau).
// The reachable latitude band is bounded by the solstice root tau_m where
// the discriminant
//   T(tau) = 1 - tau^2 - (c3/(N(tau)+h))^2
// vanishes. Everything here uses the exact N(tau)+h, no series truncation.

namespace isogeod {

// Longitude speed c3/E. Throws pole_singularity at |tau| = 1 where E = 0.
double dlambda_ds(const Surface& s, double tau, double c3);

// T and its first two tau-derivatives. Negative T is a legal return value
// (it just means tau is beyond the solstice for this c3).
struct Discriminant {
    double T;
    double dT;
    double d2T;
};

Discriminant discriminant(const Surface& s, double tau, double c3);

// dtau/ds = north*sqrt(T)/(M+h); north = +-1 selects the branch.
// Throws beyond_solstice for T < 0.
double dtau_ds(const Surface& s, double tau, double c3, int north);

// dtau/dlambda = north*sqrt(T)*E/(c3*(M+h)). Throws meridian_degenerate for
// c3 = 0 (lambda cannot parametrize a meridian) and beyond_solstice for T < 0.
double dtau_dlambda(const Surface& s, double tau, double c3, int north);

// Coefficients {c0..c4} of the quartic in x = tau_m^2 obtained by twice
// squaring (1-x)(rho_e/sqrt(1-e^2 x)+h)^2 = c3^2. Spurious roots from the
// squaring are possible; tau_tropic filters them by the exact residual.
std::array<double, 5> solstice_quartic(const Surface& s, double c3);

// Turning latitude tau_m in [0, 1]: the root of (1-tau^2)(N(tau)+h)^2 = c3^2.
// Newton on the quartic from the truncated-series seed (4 iterations), with a
// bisection polish whenever the residual exceeds 1e-12*H^2. Requires
// |c3| <= H; c3 = 0 gives tau_m = 1 (meridians reach the pole).
double tau_tropic(const Surface& s, double c3);

// Course angle kappa = atan2(c3/(N+h), north*sqrt(T)), measured from North
// over East, in (-pi, pi]. Throws beyond_solstice for T < 0.
double nautical_angle(const Surface& s, double tau, double c3, int north);

// |c3^2/E + max(T,0)/(1-tau^2) - 1|: deviation from the unit-speed identity
// E (dlambda/ds)^2 + G (dtau/ds)^2/(1-tau^2) = 1. Zero in exact arithmetic;
// a cheap probe of numerical consistency along a computed trajectory.
double unit_speed_residual(const Surface& s, double tau, double c3);

}  // namespace isogeod
