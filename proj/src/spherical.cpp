#include "isogeod/spherical.hpp"

#include <algorithm>
#include <cmath>

namespace isogeod {

double central_angle(const Boundary& b) {
    // atan2 of |P1 x P2| against P1.P2; unlike the arccosine form this keeps
    // full precision for tiny and near-antipodal separations and returns an
    // exact zero for coincident endpoints.
    const double dl = b.lambda2 - b.lambda1;
    const double c1 = std::cos(b.phi1), s1 = std::sin(b.phi1);
    const double c2 = std::cos(b.phi2), s2 = std::sin(b.phi2);
    const double cross = std::hypot(c2 * std::sin(dl), c1 * s2 - s1 * c2 * std::cos(dl));
    const double dot = s1 * s2 + c1 * c2 * std::cos(dl);
    return std::atan2(cross, dot);
}

GreatCircleArc great_circle(const Boundary& b, double radius) {
    if (!(radius > 0.0))
        throw geodesic_error(errc::bad_input, "sphere radius must be positive");
    const double Z = central_angle(b);
    if (Z == 0.0)
        throw geodesic_error(errc::degenerate_geometry,
                             "coincident endpoints span no arc");
    return {b, radius, Z};
}

ArcSample great_circle_sample(const GreatCircleArc& arc, double xi) {
    if (arc.Z == 0.0)
        throw geodesic_error(errc::degenerate_geometry,
                             "coincident endpoints span no arc");
    if (!(xi >= 0.0 && xi <= M_PI_2))
        throw geodesic_error(errc::bad_input, "mixing parameter must lie in [0, pi/2]");

    const Boundary& b = arc.boundary;
    const double cx = std::cos(xi), sx = std::sin(xi);
    // Unnormalized combination cos(xi) P1 + sin(xi) P2 of the unit endpoint
    // vectors; its squared norm is 1 + sin(2 xi) cos Z.
    const double x = cx * std::cos(b.phi1) * std::cos(b.lambda1) +
                     sx * std::cos(b.phi2) * std::cos(b.lambda2);
    const double y = cx * std::cos(b.phi1) * std::sin(b.lambda1) +
                     sx * std::cos(b.phi2) * std::sin(b.lambda2);
    const double z = cx * std::sin(b.phi1) + sx * std::sin(b.phi2);
    const double norm = std::sqrt(x * x + y * y + z * z);

    ArcSample out;
    out.phi = std::asin(std::clamp(z / norm, -1.0, 1.0));
    out.lambda = std::atan2(y, x);
    // Central angle from endpoint 1: tan(sigma) = sin(xi) sin Z / (cos(xi) + sin(xi) cos Z).
    out.sigma = std::atan2(sx * std::sin(arc.Z), cx + sx * std::cos(arc.Z));
    out.s = arc.radius * out.sigma;
    return out;
}

double c3_sphere(const Boundary& b, double radius) {
    const double Z = central_angle(b);
    const double sz = std::sin(Z);
    if (Z == 0.0 || sz == 0.0)
        throw geodesic_error(errc::degenerate_geometry,
                             "coincident or antipodal endpoints leave c3 undetermined");
    return radius * std::cos(b.phi1) * std::cos(b.phi2) * std::sin(b.lambda2 - b.lambda1) / sz;
}

}  // namespace isogeod
