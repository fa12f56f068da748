#pragma once

#include "isogeod/ellipsoid.hpp"

// First fundamental form of the iso-altitude surface in (lambda, phi)
// coordinates, ds^2 = E dlambda^2 + G dphi^2 (F = 0 by rotational symmetry),
// and the Christoffel symbols that drive the geodesic equations.

namespace isogeod {

struct FundamentalForms {
    double E;  // (N+h)^2 (1-tau^2)
    double F;  // 0
    double G;  // (M+h)^2
};

FundamentalForms fundamental_forms(const Surface& s, double tau);

// Derivatives of E with respect to tau:
//   dE/dtau   = -2 tau (N+h)(M+h)
//   d2E/dtau2 = -2 [ (N+h)(M+h) + tau N'(M+h) + tau (N+h) M' ]
struct MetricDerivs {
    double dE;
    double d2E;
};

MetricDerivs fundamental_form_derivatives(const Surface& s, double tau);

// The three nonzero Christoffel symbols of the chart (all others vanish by
// symmetry). At e=0 they reduce to sin*cos, -tan, 0.
struct Christoffel {
    double phi_lambda_lambda;  // (N+h) sin(phi) cos(phi) / (M+h)
    double lambda_phi_lambda;  // -tan(phi) (M+h)/(N+h)
    double phi_phi_phi;        // 3 M e^2 sin(phi) cos(phi) / ((M+h)(1-e^2 tau^2))
};

// Throws pole_singularity at |tau| = 1 where tan(phi) diverges.
Christoffel christoffel(const Surface& s, double tau);

}  // namespace isogeod
