#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace isogeod {

// Failure categories for geodesic computations. Callers that want to branch
// on the cause catch geodesic_error and switch on code().
enum class errc {
    bad_input,            // argument outside the documented domain
    pole_singularity,     // operation undefined at |tau| = 1
    meridian_degenerate,  // c3 = 0 where lambda cannot parametrize the path
    beyond_solstice,      // discriminant negative: latitude not reachable
    no_solstice,          // no turning latitude found for this c3
    degenerate_geometry,  // coincident or antipodal endpoints, vanishing bracket
    solver_failure,       // iteration did not converge; payload = best residual
    integration_failure   // mesh walk left the valid domain; payload = last good lambda
};

class geodesic_error : public std::runtime_error {
public:
    geodesic_error(errc c, const std::string& what,
                   double payload = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), code_(c), payload_(payload) {}

    errc code() const noexcept { return code_; }

    // Extra diagnostic value; meaning depends on code() (see enum comments).
    double payload() const noexcept { return payload_; }

private:
    errc code_;
    double payload_;
};

}  // namespace isogeod
