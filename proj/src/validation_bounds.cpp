#include <cmath>
#include <stdexcept>

#include "fpsub/quadrature.hpp"
#include "fpsub/validation.hpp"

namespace fpsub {

HittingBoundReport hitting_bound_check(const SubordinatorSpec& spec, double c0,
                                       std::size_t n, RngStream& rng) {
    if (n < 1000)
        throw std::invalid_argument("hitting_bound_check: need n >= 1000");
    const double u = 1.0 / (1.0 + c0);
    HittingBoundReport rep;

    // psi_X(u) over the full Levy measure: truncated tempered-stable part by
    // quadrature plus the finite part's mean transform.
    double psi_x = spec.finite_part.mass > 0.0
                       ? spec.finite_part.mean_transform(u)
                       : 0.0;
    if (std::isfinite(spec.r)) {
        psi_x += spec.vartheta *
                 integrate_singular_lower(
                     [&spec, u](double x) {
                         return -std::expm1(-u * x) * std::exp(-spec.q * x);
                     },
                     spec.alpha, spec.r, 1e-9);
    } else {
        // Split at 1 to keep the singular substitution finite.
        psi_x += spec.vartheta *
                 integrate_singular_lower(
                     [&spec, u](double x) {
                         return -std::expm1(-u * x) * std::exp(-spec.q * x);
                     },
                     spec.alpha, 1.0, 1e-9);
        psi_x += spec.vartheta *
                 integrate_right_open(
                     [&spec, u](double x) {
                         return -std::expm1(-u * x) * std::exp(-spec.q * x) *
                                std::pow(x, -spec.alpha - 1.0);
                     },
                     1.0, 1e-9);
    }
    rep.tau_bound = std::exp(u * c0) / psi_x;

    const Boundary c = Boundary::constant(c0);
    const EngineConfig cfg;
    ZolotarevContext ctx(spec.alpha);
    const FptsSampler fpts = [&ctx, &spec](const Boundary& f, RngStream& r) {
        return fpts_default(ctx, spec.theta, spec.q, f, r);
    };
    std::vector<double> taus;
    taus.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream sub = rng.split(i);
        taus.push_back(sample_crossing(ctx, spec, c, cfg, fpts, sub).time);
    }
    const Summary tau_sum = summarize(taus);
    rep.tau_mean = tau_sum.mean;
    rep.tau_se = tau_sum.std_error;

    bool steps_ok = true;
    if (spec.finite_part.mass > 0.0) {
        // Jump chain of lambda_r: steps until the running sum clears c0.
        const double psi_r =
            1.0 - spec.finite_part.mean_transform(u) / spec.finite_part.mass;
        rep.steps_bound = std::exp(u * c0) / (1.0 - psi_r);
        std::vector<double> steps;
        steps.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            RngStream sub = rng.split(n + i);
            double s = 0.0;
            long k = 0;
            while (s <= c0) {
                s += spec.finite_part.sampler(sub);
                ++k;
            }
            steps.push_back(static_cast<double>(k));
        }
        const Summary st = summarize(steps);
        rep.steps_mean = st.mean;
        rep.steps_se = st.std_error;
        steps_ok = rep.steps_mean <= rep.steps_bound + 3.0 * rep.steps_se;
    } else {
        rep.steps_bound = kInf;
    }

    rep.pass = (rep.tau_mean <= rep.tau_bound + 3.0 * rep.tau_se) && steps_ok;
    return rep;
}

} // namespace fpsub
