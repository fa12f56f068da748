#include "isogeod/metric.hpp"

#include <cmath>

namespace isogeod {

FundamentalForms fundamental_forms(const Surface& s, double tau) {
    const double Nh = radius_N(s.ell, tau) + s.h;
    const double Mh = radius_M(s.ell, tau) + s.h;
    return {Nh * Nh * (1.0 - tau * tau), 0.0, Mh * Mh};
}

MetricDerivs fundamental_form_derivatives(const Surface& s, double tau) {
    const auto d = detail::radius_derivs(s.ell, tau);
    const double Nh = d.N + s.h;
    const double Mh = d.M + s.h;
    MetricDerivs out;
    out.dE = -2.0 * tau * Nh * Mh;
    out.d2E = -2.0 * (Nh * Mh + tau * d.dN * Mh + tau * Nh * d.dM);
    return out;
}

Christoffel christoffel(const Surface& s, double tau) {
    if (std::abs(tau) >= 1.0)
        throw geodesic_error(errc::pole_singularity,
                             "Christoffel symbols are singular at the poles");
    const double e2 = s.ell.ecc * s.ell.ecc;
    const double u = 1.0 - e2 * tau * tau;
    const double N = radius_N(s.ell, tau);
    const double M = radius_M(s.ell, tau);
    const double Nh = N + s.h;
    const double Mh = M + s.h;
    const double cphi = std::sqrt(1.0 - tau * tau);
    Christoffel g;
    g.phi_lambda_lambda = Nh * tau * cphi / Mh;
    g.lambda_phi_lambda = -(tau / cphi) * Mh / Nh;
    g.phi_phi_phi = 3.0 * M * e2 * tau * cphi / (Mh * u);
    return g;
}

}  // namespace isogeod
