#include "isogeod/series.hpp"

#include <algorithm>
#include <cmath>

namespace isogeod {

void check_series_order(int order) {
    if (order != 0 && order != 2 && order != 4)
        throw geodesic_error(errc::bad_input, "series order must be 0, 2 or 4");
}

namespace {

double sign_or_one(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

double lambda_turn_value(const Surface& s, double c3, int order) {
    check_series_order(order);
    const double H = s.H();
    const double rho = s.ell.rho_e;
    const double eps = s.ell.ecc * s.ell.ecc;
    double q = (c3 == 0.0) ? 0.0 : sign_or_one(c3);  // odd in c3; 0 on meridians
    if (order >= 2) q -= eps * (c3 * rho / (2.0 * H * H));
    if (order >= 4)
        q -= eps * eps * (c3 * rho / (16.0 * std::pow(H, 5))) *
             (3.0 * H * H * H - 2.0 * rho * H * H - 3.0 * c3 * c3 * H + 4.0 * c3 * c3 * rho);
    return (M_PI / 2.0) * q;
}

double distance_turn_value(const Surface& s, double c3, int order) {
    check_series_order(order);
    const double H = s.H();
    const double rho = s.ell.rho_e;
    const double eps = s.ell.ecc * s.ell.ecc;
    const double k2 = (c3 / H) * (c3 / H);
    const double rb = rho / H;
    double q = H;
    if (order >= 2) q -= eps * (rho / 4.0) * (1.0 + k2);
    if (order >= 4)
        q += eps * eps * (rho / 64.0) *
             (9.0 * k2 * k2 - 6.0 * k2 - 12.0 * k2 * k2 * rb + 4.0 * k2 * rb - 3.0);
    return (M_PI / 2.0) * q;
}

double lambda_underivative(const Surface& s, double tau, double c3, int order) {
    check_series_order(order);
    const double H = s.H();
    if (!(std::abs(c3) <= H))
        throw geodesic_error(errc::bad_input, "|c3| must not exceed rho_e + h");
    const double rho = s.ell.rho_e;
    const double eps = s.ell.ecc * s.ell.ecc;
    const double x = c3 / H;
    const double T = 1.0 - tau * tau - x * x;
    if (T < 0.0)
        throw geodesic_error(errc::beyond_solstice, "latitude beyond the turning point");
    if (T == 0.0)  // grazing endpoint: analytic limit
        return sign_or_one(tau) * lambda_turn_value(s, c3, order);

    const double rT = std::sqrt(T);
    const double at = std::atan(tau / rT);
    double v = std::atan(tau * x / rT);
    if (order >= 2) v += eps * (-(c3 * rho / (2.0 * H * H)) * (tau / rT + at));
    if (order >= 4) {
        const double c2 = c3 * c3;
        const double H2 = H * H;
        const double poly = -2.0 * H2 * c2 * rho + 4.0 * H2 * c2 * rho * T +
                            2.0 * c2 * c2 * rho - 6.0 * H2 * H * c2 * T +
                            6.0 * H2 * H2 * H * T - 9.0 * H2 * H2 * H * T * T -
                            4.0 * H2 * H2 * rho * T + 6.0 * H2 * H2 * rho * T * T;
        v += eps * eps *
             (-(c3 * rho / (16.0 * std::pow(H, 7))) *
              ((tau / (T * rT)) * poly +
               H2 * (3.0 * H2 * H - 2.0 * rho * H2 - 3.0 * c2 * H + 4.0 * c2 * rho) * at));
    }
    return v;
}

double distance_underivative(const Surface& s, double tau, double c3, int order) {
    check_series_order(order);
    const double H = s.H();
    if (!(std::abs(c3) <= H))
        throw geodesic_error(errc::bad_input, "|c3| must not exceed rho_e + h");
    const double rho = s.ell.rho_e;
    const double eps = s.ell.ecc * s.ell.ecc;
    const double x = c3 / H;
    const double T = 1.0 - tau * tau - x * x;
    if (T < 0.0)
        throw geodesic_error(errc::beyond_solstice, "latitude beyond the turning point");
    if (T == 0.0)
        return sign_or_one(tau) * distance_turn_value(s, c3, order);

    const double rT = std::sqrt(T);
    const double at = std::atan(tau / rT);
    const double k2 = x * x;
    const double rb = rho / H;
    double v = H * at;
    if (order >= 2)
        v += eps * (-(rho / 4.0) * ((1.0 + k2) * at + tau * (3.0 * (1.0 - tau * tau) - k2) / rT));
    if (order >= 4) {
        const double poly = 24.0 * T * k2 * k2 - 24.0 * T * k2 + 63.0 * T * T * k2 -
                            8.0 * rb * k2 * k2 * k2 + 8.0 * rb * k2 * k2 -
                            8.0 * rb * T * k2 * k2 + 8.0 * rb * T * k2 -
                            12.0 * rb * T * T * k2 - 27.0 * T * T + 30.0 * T * T * T;
        v += eps * eps * (rho / 64.0) *
             ((9.0 * k2 * k2 - 6.0 * k2 - 12.0 * k2 * k2 * rb + 4.0 * k2 * rb - 3.0) * at +
              (tau / (T * rT)) * poly);
    }
    return v;
}

int turning_side(double tau1, double tau2) {
    const double t = std::abs(tau2) >= std::abs(tau1) ? tau2 : tau1;
    return t < 0.0 ? -1 : 1;
}

double delta_lambda(const Surface& s, double tau1, double tau2, double c3,
                    int order, Route route) {
    switch (route) {
        case Route::meridian:
            return 0.0;
        case Route::direct: {
            if (tau1 == tau2) return 0.0;
            const double north = tau2 > tau1 ? 1.0 : -1.0;
            return north * (lambda_underivative(s, tau2, c3, order) -
                            lambda_underivative(s, tau1, c3, order));
        }
        case Route::via_solstice: {
            const double sigma = turning_side(tau1, tau2);
            return 2.0 * lambda_turn_value(s, c3, order) -
                   sigma * (lambda_underivative(s, tau1, c3, order) +
                            lambda_underivative(s, tau2, c3, order));
        }
    }
    throw geodesic_error(errc::bad_input, "unknown route");
}

double path_length(const Surface& s, double tau1, double tau2, double c3,
                   int order, Route route) {
    switch (route) {
        case Route::meridian:
            return meridian_length(s, tau1, tau2, order, 0);
        case Route::direct:
            return std::abs(distance_underivative(s, tau2, c3, order) -
                            distance_underivative(s, tau1, c3, order));
        case Route::via_solstice: {
            const double sigma = turning_side(tau1, tau2);
            return 2.0 * distance_turn_value(s, c3, order) -
                   sigma * (distance_underivative(s, tau1, c3, order) +
                            distance_underivative(s, tau2, c3, order));
        }
    }
    throw geodesic_error(errc::bad_input, "unknown route");
}

double meridian_length(const Surface& s, double tau1, double tau2, int order,
                       int over_pole) {
    if (over_pole == 0)
        return std::abs(distance_underivative(s, tau2, 0.0, order) -
                        distance_underivative(s, tau1, 0.0, order));
    return 2.0 * distance_turn_value(s, 0.0, order) -
           over_pole * (distance_underivative(s, tau1, 0.0, order) +
                        distance_underivative(s, tau2, 0.0, order));
}

SeriesSolve solve_c3(const Surface& s, const Boundary& b, int order, double tol) {
    check_series_order(order);
    const double tau1 = std::sin(b.phi1);
    const double tau2 = std::sin(b.phi2);
    const double target = b.lambda2 - b.lambda1;

    if (std::abs(std::sin(target)) < 1e-12) {
        // Same meridian (or directly across the poles). c3 = 0 exactly.
        if (std::abs(target) < 1e-12 && tau1 == tau2)
            throw geodesic_error(errc::degenerate_geometry, "coincident endpoints");
        return {0.0, Route::meridian, 0, 0.0, 0};
    }
    if (tau1 == 0.0 && tau2 == 0.0) {
        // The equator is the geodesic; T vanishes identically along it.
        return {std::copysign(s.H(), target), Route::direct, 0, 0.0, 0};
    }

    const double H = s.H();
    const double sgn = sign_or_one(target);
    const double t = std::abs(target);
    const double tau_big = std::abs(tau1) >= std::abs(tau2) ? tau1 : tau2;
    const double tau_other = std::abs(tau1) >= std::abs(tau2) ? tau2 : tau1;
    const double xe = std::sqrt(1.0 - tau_big * tau_big);

    // Longitude span of the grazing trajectory (the one whose turning point
    // sits exactly on the higher endpoint). Larger spans need the
    // via-solstice composition.
    const double ce = sgn * xe * H;
    const double edge = std::abs(sign_or_one(tau_big) * lambda_turn_value(s, ce, order) -
                                 lambda_underivative(s, tau_other, ce, order));

    Route route;
    int sigma = 0;
    if (t <= edge) {
        route = Route::direct;
    } else {
        route = Route::via_solstice;
        sigma = turning_side(tau1, tau2);
    }

    // No absolute value here: close to the grazing edge the truncated series
    // overshoots with a sign that still brackets the root (positive for the
    // direct route, negative for via), while |.| would fold it onto the wrong
    // side and collapse the bracket.
    auto f = [&](double x) {
        return sgn * delta_lambda(s, tau1, tau2, sgn * x * H, order, route) - t;
    };

    double lo = 1e-14, hi = xe * (1.0 - 1e-14);
    double flo = f(lo);

    // Spherical seed, clamped into the bracket.
    double x;
    {
        const double cz = std::sin(b.phi1) * std::sin(b.phi2) +
                          std::cos(b.phi1) * std::cos(b.phi2) * std::cos(b.lambda1 - b.lambda2);
        const double sz = std::sqrt(std::max(1.0 - cz * cz, 0.0));
        double c0 = (sz > 0.0)
                        ? H * std::cos(b.phi1) * std::cos(b.phi2) * std::sin(target) / sz
                        : 0.5 * H;
        // Keep the seed away from the grazing edge, where series terms carry
        // inverse powers of the vanishing discriminant.
        x = std::clamp(std::abs(c0) / H, lo, std::min(hi, xe * (1.0 - 1e-4)));
    }

    double fx = f(x);
    double best_x = x, best_f = std::abs(fx);
    int it = 0;
    const int itmax = 80;
    for (; it < itmax; ++it) {
        fx = f(x);
        if (std::abs(fx) < best_f) {
            best_f = std::abs(fx);
            best_x = x;
        }
        if (std::abs(fx) < tol || hi - lo < 4e-16 * std::max(1.0, x)) break;
        const double d = std::max(1e-8 * std::max(x, 1e-3), 1e-12);
        const double xl = std::max(lo, x - d), xr = std::min(hi, x + d);
        if (xr <= xl) break;
        const double fp = (f(xr) - f(xl)) / (xr - xl);
        double xn = (fp != 0.0) ? x - fx / fp : 0.5 * (lo + hi);
        if (fx * flo < 0.0) {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        if (!(lo < xn && xn < hi)) xn = 0.5 * (lo + hi);
        x = xn;
    }

    if (best_f > tol)
        throw geodesic_error(errc::solver_failure,
                             "longitude equation did not converge", best_f);
    return {sgn * best_x * H, route, sigma, best_f, it};
}

double c3_order2_correction(const Surface& s, const Boundary& b, double c3_0) {
    const double tau1 = std::sin(b.phi1);
    const double tau2 = std::sin(b.phi2);
    if (tau1 == 0.0 && tau2 == 0.0) return 0.0;  // c3(e) = H exactly on the equator

    const double H = s.H();
    const double rho = s.ell.rho_e;
    const double x0 = c3_0 / H;
    const double target = b.lambda2 - b.lambda1;

    // e^2-bracket of the longitude underivative and d(order-0)/d(c3).
    auto lam2 = [&](double tau) {
        const double T = 1.0 - tau * tau - x0 * x0;
        const double rT = std::sqrt(T);
        return -(c3_0 * rho / (2.0 * H * H)) * (tau / rT + std::atan(tau / rT));
    };
    auto dlam0_dc3 = [&](double tau) {
        const double T = 1.0 - tau * tau - x0 * x0;
        return tau / (H * std::sqrt(T) * (1.0 - x0 * x0));
    };

    const double tau_big = std::abs(tau1) >= std::abs(tau2) ? tau1 : tau2;
    const double Tmin = 1.0 - tau_big * tau_big - x0 * x0;
    if (!(Tmin > 1e-14))
        throw geodesic_error(errc::degenerate_geometry,
                             "endpoint sits on the turning point of c3_0");

    // Route of the zero-eccentricity solution decides the composition.
    const double tau_other = std::abs(tau1) >= std::abs(tau2) ? tau2 : tau1;
    const double x_edge = std::sqrt(1.0 - tau_big * tau_big);
    const double ce = sign_or_one(target) * x_edge * H;
    const double edge = std::abs(sign_or_one(tau_big) * lambda_turn_value(s, ce, 0) -
                                 lambda_underivative(s, tau_other, ce, 0));

    double num, den;
    if (std::abs(target) <= edge) {
        num = lam2(tau2) - lam2(tau1);
        den = dlam0_dc3(tau2) - dlam0_dc3(tau1);
    } else {
        const int sigma = turning_side(tau1, tau2);
        const double q2 = -(M_PI / 2.0) * (c3_0 * rho / (2.0 * H * H));
        num = 2.0 * q2 - sigma * (lam2(tau1) + lam2(tau2));
        den = -sigma * (dlam0_dc3(tau1) + dlam0_dc3(tau2));
    }
    if (std::abs(den) * H < 1e-12)
        throw geodesic_error(errc::degenerate_geometry,
                             "vanishing longitude-derivative bracket");
    return -num / den;
}

}  // namespace isogeod
