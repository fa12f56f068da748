#pragma once

#include <vector>

#include <Eigen/Core>

#include "isogeod/ellipsoid.hpp"

// Finite-element integration of the geodesic, marching tau(lambda) and
// s(lambda) across a uniform longitude mesh with per-element Taylor steps,
// and the shooting iteration that tunes c3 until the endpoint latitude is
// hit. This is the numerical route; the closed-form series solver is the
// analytic one, and the two are cross-checked in the tests.

namespace isogeod {

struct ShootingConfig {
    int n_steps = 400;       // longitude mesh elements between the endpoints
    int taylor_order = 3;    // per-element expansion order, 2 or 3
    int undersample = 10;    // keep every k-th mesh point; <= 0 keeps none
    double endpoint_tolerance = 1e-6;  // |tau miss| accepted by c3_shoot
};

// One retained mesh point of an integrated trajectory.
struct TrajectorySample {
    Eigen::Vector3d r;  // geocentric Cartesian position
    double lambda;      // longitude [rad]
    double phi;         // geodetic latitude [rad]
    double kappa;       // nautical course [rad]
    double s;           // path length from the start
};

// Taylor coefficients of tau(lambda) and s(lambda) at one mesh point:
// d^k tau/dlambda^k and d^k s/dlambda^k for k = 1..3. With order 2 the
// cubic coefficients are zero.
struct StepDerivs {
    double dtau1, dtau2, dtau3;
    double ds1, ds2, ds3;
};

// Throws meridian_degenerate for c3 = 0 (lambda cannot parametrize a
// meridian), beyond_solstice for T < 0, bad_input for order outside {2,3}.
StepDerivs step_derivatives(const Surface& s, double tau, double c3, int north,
                            int order);

// Launch branch sign of dtau/ds, from the spherical triangle estimate
// sgn(sin(phi2) - sin(phi1) cos(Z)); ties resolve to +1.
int initial_north_sign(const Boundary& b);

// Shift lambda2 by +-2pi when that shortens the swept interval, so the
// mesh runs along the nearer hemisphere.
double adjust_lambda_end(double lambda1, double lambda2);

struct ShootResult {
    std::vector<TrajectorySample> samples;
    double tau_end;         // integrated tau at lambda2
    double endpoint_error;  // tau_end - sin(phi2)
    double s_total;         // integrated path length
    int flips;              // solstice crossings detected by the flat test
    int final_north;        // branch sign after the last element
};

// Integrate the trajectory at fixed c3 from (phi1, lambda1) to lambda2.
// The discriminant is allowed to dip below zero by one element's worth of
// drift (it is then treated as an exact grazing of the solstice); a deeper
// dive throws integration_failure with the last valid longitude as payload.
ShootResult tau_shoot(const Surface& s, const Boundary& b, double c3,
                      const ShootingConfig& cfg);

// History of the c3 search: staged startup probes, then secant refinement.
enum class StageKind { spherical, offset_probe, linear, quadratic, refine };

struct ShootStage {
    StageKind kind;
    double c3;
    double error;  // endpoint tau miss when integrating at this c3
};

struct ShootSolve {
    double c3;
    double endpoint_error;
    bool staged_convergence;  // tolerance met within the four startup stages
    std::vector<ShootStage> stages;
};

// Solve the endpoint condition for c3: spherical seed, one relative offset
// probe, linear then quadratic extrapolation of the miss, then secant
// refinement on the two best probes (halving the step toward the best known
// point when an iterate fails to integrate). Throws solver_failure with the
// best |miss| as payload if cfg.endpoint_tolerance is never reached.
ShootSolve c3_shoot(const Surface& s, const Boundary& b,
                    const ShootingConfig& cfg);

}  // namespace isogeod
