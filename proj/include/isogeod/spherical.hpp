#pragma once

#include "isogeod/ellipsoid.hpp"

// Great-circle closed forms on the sphere of radius rho_e + h. These are the
// e = 0 limit of the full problem and provide the launching-parameter seed
// for both the series and the shooting solver.

namespace isogeod {

// Central angle Z = arccos(sin phi1 sin phi2 + cos phi1 cos phi2 cos(lambda1-lambda2)),
// clamped into [0, pi].
double central_angle(const Boundary& b);

struct GreatCircleArc {
    Boundary boundary;
    double radius;  // rho_e + h
    double Z;       // central angle between the endpoints
};

GreatCircleArc great_circle(const Boundary& b, double radius);

// Point on the arc at mixing parameter xi in [0, pi/2]: the chord direction
// cos(xi) P1 + sin(xi) P2 normalized back onto the sphere. xi = 0 is endpoint
// 1, xi = pi/2 endpoint 2. sigma is the central angle from endpoint 1 and
// s = radius*sigma the arc length. Throws degenerate_geometry when Z = 0.
struct ArcSample {
    double phi;
    double lambda;
    double sigma;
    double s;
};

ArcSample great_circle_sample(const GreatCircleArc& arc, double xi);

// Spherical launching parameter c3 = radius*cos phi1 cos phi2 sin(lambda2-lambda1)/sin Z.
// Throws degenerate_geometry for coincident or antipodal endpoints (sin Z = 0).
double c3_sphere(const Boundary& b, double radius);

}  // namespace isogeod
