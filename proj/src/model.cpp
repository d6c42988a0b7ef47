#include "fpsub/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpsub/quadrature.hpp"

namespace fpsub {

Boundary Boundary::constant(double level) {
    if (!(level > 0.0))
        throw std::invalid_argument("Boundary::constant: level must be positive");
    Boundary b;
    b.eval = [level](double) { return level; };
    b.c0 = level;
    b.constant_level = level;
    return b;
}

Boundary Boundary::linear(double c0, double slope) {
    if (!(c0 > 0.0))
        throw std::invalid_argument("Boundary::linear: c0 must be positive");
    if (slope < 0.0)
        throw std::invalid_argument("Boundary::linear: slope must be >= 0 (non-increasing)");
    if (slope == 0.0) return constant(c0);
    Boundary b;
    b.eval = [c0, slope](double t) { return std::max(c0 - slope * t, 0.0); };
    b.c0 = c0;
    return b;
}

Boundary Boundary::from_function(std::function<double(double)> f) {
    Boundary b;
    b.c0 = f(0.0);
    b.eval = std::move(f);
    if (!(b.c0 > 0.0))
        throw std::invalid_argument("Boundary: c(0) must be positive");
    return b;
}

SubordinatorSpec SubordinatorSpec::make(double alpha, double vartheta, double q,
                                        double r, double r0,
                                        FiniteMeasure finite_part) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("SubordinatorSpec: alpha must lie in (0,1)");
    if (!(vartheta > 0.0))
        throw std::invalid_argument("SubordinatorSpec: vartheta must be positive");
    if (q < 0.0) throw std::invalid_argument("SubordinatorSpec: q must be >= 0");
    if (!(r > 0.0 && r <= r0))
        throw std::invalid_argument("SubordinatorSpec: need 0 < r <= r0");
    if (!(finite_part.mass >= 0.0) || !std::isfinite(finite_part.mass))
        throw std::invalid_argument("SubordinatorSpec: finite_part.mass must be finite");
    SubordinatorSpec s;
    s.alpha = alpha;
    s.vartheta = vartheta;
    s.q = q;
    s.r = r;
    s.r0 = r0;
    s.finite_part = std::move(finite_part);
    s.theta = vartheta * std::tgamma(1.0 - alpha) / alpha;
    return s;
}

double resolve_truncation(double r0, double alpha, double q) {
    if (q == 0.0) return r0;
    return std::min(r0, 2.0 * alpha / q);
}

double lambda_mass(double alpha, double vartheta, double q, double r, double r0,
                   double lambda_r0_mass) {
    if (!(r > 0.0 && r <= r0))
        throw std::invalid_argument("lambda_mass: need 0 < r <= r0");
    if (lambda_r0_mass < 0.0)
        throw std::invalid_argument("lambda_mass: lambda_r0_mass must be >= 0");
    if (r == r0) return lambda_r0_mass;
    const double tail = integrate_upper(
        [vartheta, q, alpha](double x) {
            return vartheta * std::exp(-q * x) * std::pow(x, -alpha - 1.0);
        },
        r, r0);
    const double result = lambda_r0_mass + tail;
    if (!std::isfinite(result))
        throw std::runtime_error("lambda_mass: non-finite result");
    return result;
}

double lambda_mass(const SubordinatorSpec& spec, double lambda_r0_mass) {
    return lambda_mass(spec.alpha, spec.vartheta, spec.q, spec.r, spec.r0,
                       lambda_r0_mass);
}

double upsilon(double u, double r, double q) {
    if (!(u > 0.0) || !(r > 0.0) || q < 0.0)
        throw std::invalid_argument("upsilon: need u > 0, r > 0, q >= 0");
    const double s = std::min(r, 1.0);
    const double inv = std::max(1.0 / r, 1.0); // r^{-1} v 1; 1/inf == 0
    if (u + q < inv) return 0.5 * u * s;
    if (q < inv) return 0.5 * (1.0 - s * q + std::log((u + q) * s));
    return 0.5 * std::log1p(u / q);
}

double complexity_bracket(const SubordinatorSpec& spec, double c0, double rho,
                          double T0, double psi0) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("complexity_bracket: rho must lie in (0,1)");
    if (!(c0 > 0.0) || !(T0 > 0.0) || psi0 < 0.0)
        throw std::invalid_argument("complexity_bracket: bad c0/T0/psi0");
    const double ups = upsilon(1.0 / (1.0 + c0), spec.r0, spec.q);
    const double denom = psi0 + spec.vartheta * ups;
    if (!(denom > 0.0))
        throw std::logic_error("complexity_bracket: psi0 + vartheta*Upsilon must be positive");
    const double cap = std::min(c0, spec.r * rho);
    const double cost = T0 / (1.0 - std::pow(rho, spec.alpha)) + std::exp(spec.q * cap);
    const double loops = spec.finite_part.mass / denom + c0 / (spec.r * rho);
    return cost * loops;
}

DensityDecomposition decompose_density(const std::function<double(double)>& pi2,
                                       const std::function<double(double)>& pi1,
                                       double a1, double a2, double r_cert) {
    if (a1 < 0.0 || a2 < 0.0 || !(r_cert > 0.0))
        throw std::invalid_argument("decompose_density: need a1,a2 >= 0 and r_cert > 0");

    auto make_xi = [&pi2, &pi1](double b, double r) {
        return [&pi2, &pi1, b, r](double t) {
            double v = pi2(t);
            if (t <= r) v -= std::exp(-b * t) * pi1(t);
            return v;
        };
    };
    auto grid_valid = [&pi2, &pi1](double b, double r, double span,
                                   double* offending) {
        // log-spaced grid over (span*1e-9, span]
        const int n = 1200;
        for (int i = 0; i < n; ++i) {
            const double t = span * std::pow(1e-9, 1.0 - (i + 1.0) / n);
            double v = pi2(t);
            if (t <= r) v -= std::exp(-b * t) * pi1(t);
            if (v < -1e-12 * std::max(std::abs(pi2(t)), 1.0)) {
                *offending = t;
                return false;
            }
        }
        return true;
    };

    double offending = 0.0;
    if (a1 == 0.0) {
        if (!grid_valid(0.0, r_cert, 2.0 * r_cert, &offending))
            throw std::runtime_error(
                "decompose_density: certificate rejected, xi_bar < 0 at t = " +
                std::to_string(offending));
        return {0.0, r_cert, make_xi(0.0, r_cert)};
    }

    // Tight choice first: b = a1, r = r_cert. The certificate's lower envelope
    // only guarantees this when pi2/pi1 equals e^{-a1 t}-type decay; the grid
    // check is the actual gate.
    if (grid_valid(a1, r_cert, 2.0 * r_cert, &offending))
        return {a1, r_cert, make_xi(a1, r_cert)};

    // Conservative choice: shrink r so that a1*r < 1 and take
    // b = -log(1 - a1 r)/r, which gives e^{-bt} <= 1 - a1 t on (0, r].
    const double r = std::min(r_cert, 0.5 / a1);
    const double b = -std::log1p(-a1 * r) / r;
    if (!grid_valid(b, r, 2.0 * r_cert, &offending))
        throw std::runtime_error(
            "decompose_density: certificate rejected, xi_bar < 0 at t = " +
            std::to_string(offending));
    return {b, r, make_xi(b, r)};
}

Boundary boundary_update(const Boundary& c, double t_shift, double v_shift,
                         double cap) {
    Boundary b;
    if (c.is_constant()) {
        const double level = std::min(*c.constant_level - v_shift, cap);
        b.eval = [level](double) { return level; };
        b.c0 = level;
        b.constant_level = level;
        return b;
    }
    auto base = c.eval;
    b.eval = [base, t_shift, v_shift, cap](double t) {
        return std::min(base(t + t_shift) - v_shift, cap);
    };
    b.c0 = b.eval(0.0);
    return b;
}

CrossingTriplet drift_adjust(const CrossingTriplet& triplet, double mu) {
    if (mu < 0.0) throw std::invalid_argument("drift_adjust: mu must be >= 0");
    CrossingTriplet out = triplet;
    out.undershoot += mu * triplet.time;
    out.overshoot += mu * triplet.time;
    return out;
}

} // namespace fpsub
