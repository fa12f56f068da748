#pragma once

#include "isogeod/ellipsoid.hpp"

// Eccentricity-series solution of the inverse problem. The longitude and
// distance integrals along a geodesic are expanded in powers of e^2 around
// the sphere of radius H = rho_e + h and integrated in closed form, giving
// "underivatives" Lambda(tau) and S(tau) whose endpoint differences are
// delta-lambda and arc length. The truncation keeps powers of e up to
// `order` (0, 2 or 4). This module owns the series discriminant
// T = 1 - tau^2 - (c3/H)^2 with constant H; the exact-core module owns the
// untruncated variant with N(tau)+h.

namespace isogeod {

// How a trajectory connects the endpoints.
enum class Route {
    direct,        // tau monotone between tau1 and tau2
    via_solstice,  // tau rises to the turning latitude and comes back
    meridian       // lambda1 = lambda2 (mod pi): c3 = 0 path
};

// Checks an order argument is one of {0, 2, 4}.
void check_series_order(int order);

// Longitude underivative Lambda(tau) for |c3| <= H, odd in tau and in c3.
// The arctan branch is continued so that Lambda is continuous across the
// whole reachable band (principal values already are, for the bracket forms
// used here). Throws beyond_solstice when T < 0; at T = 0 returns the
// grazing limit lambda_turn_value.
double lambda_underivative(const Surface& s, double tau, double c3, int order);

// Distance underivative S(tau), same conventions as lambda_underivative.
double distance_underivative(const Surface& s, double tau, double c3, int order);

// Values of the underivatives at the northern turning latitude tau_m(c3)
// (both odd in c3). These finite parts let via-solstice paths be composed
// without evaluating the integrands at their endpoint singularity.
double lambda_turn_value(const Surface& s, double c3, int order);
double distance_turn_value(const Surface& s, double c3, int order);

// Turning side of a via-solstice path: hemisphere of the endpoint with the
// larger |tau| (ties resolve north). Returns +1 or -1.
int turning_side(double tau1, double tau2);

// Signed longitude difference lambda2 - lambda1 accumulated along the route.
//   direct:       sgn(tau2-tau1) * (Lambda(tau2) - Lambda(tau1))
//   via_solstice: 2*lambda_turn_value - sigma*(Lambda(tau1) + Lambda(tau2))
//   meridian:     0
double delta_lambda(const Surface& s, double tau1, double tau2, double c3,
                    int order, Route route);

// Arc length along the route (>= 0), from the same composition applied to S.
double path_length(const Surface& s, double tau1, double tau2, double c3,
                   int order, Route route);

// Meridian arc length (c3 = 0). over_pole = 0 walks tau directly from tau1
// to tau2; +-1 goes across that pole (for |delta lambda| = pi boundaries).
double meridian_length(const Surface& s, double tau1, double tau2, int order,
                       int over_pole);

struct SeriesSolve {
    double c3;
    Route route;
    int sigma;        // turning side, meaningful for via_solstice
    double residual;  // |delta_lambda(c3) - (lambda2-lambda1)| in rad
    int iterations;
};

// Solves delta_lambda(c3) = lambda2 - lambda1 for c3 by a bracketed
// finite-difference Newton iteration on x = |c3|/H in (0, x_edge), after
// deciding direct vs via-solstice from the grazing-edge longitude span.
// Meridian boundaries (|sin(lambda2-lambda1)| < 1e-12) return Route::meridian
// with c3 = 0; equatorial boundaries return c3 = sgn(delta lambda)*H exactly.
// Throws degenerate_geometry for coincident endpoints and solver_failure
// (payload = best residual) if the iteration cannot meet `tol`.
SeriesSolve solve_c3(const Surface& s, const Boundary& b, int order,
                     double tol = 1e-12);

// First eccentricity correction c3_2 in c3(e) = c3_0 + c3_2 e^2 + O(e^4),
// from implicit differentiation of the longitude equation at e = 0 with c3_0
// the spherical parameter. Equatorial boundaries return 0. Throws
// degenerate_geometry when the denominator bracket vanishes.
double c3_order2_correction(const Surface& s, const Boundary& b, double c3_0);

}  // namespace isogeod
