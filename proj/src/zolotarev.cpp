#include "fpsub/zolotarev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpsub/quadrature.hpp"

namespace fpsub {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

ZolotarevContext::ZolotarevContext(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ZolotarevContext: alpha must lie in (0,1)");
    beta_ = alpha / (1.0 - alpha);
    sigma_at_zero_ = (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha));

    // Ternary search for the minimizer; convexity makes this global. The
    // minimum sits at the left edge whenever sigma is increasing.
    double lo = 1e-14, hi = 1.0 - 1e-14;
    while (hi - lo > 1e-12) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (log_sigma(m1) < log_sigma(m2))
            hi = m2;
        else
            lo = m1;
    }
    u_star_ = 0.5 * (lo + hi);
    log_sigma_min_ = std::min(log_sigma(u_star_), std::log(sigma_at_zero_));
    sigma_min_ = std::exp(log_sigma_min_);
    log_sigma_lb_ = log_sigma_min_ - 1e-9;
}

double ZolotarevContext::log_sigma(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("sigma_alpha: u must lie in (0,1)");
    const double a = alpha_;
    return (beta_ + 1.0) * (a * std::log(std::sin(a * kPi * u)) +
                            (1.0 - a) * std::log(std::sin((1.0 - a) * kPi * u)) -
                            std::log(std::sin(kPi * u)));
}

double ZolotarevContext::sigma(double u) const { return std::exp(log_sigma(u)); }

double phi_density(const ZolotarevContext& ctx, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("phi_density: x must be positive");
    const double beta = ctx.beta();
    const double lx = std::log(x);
    auto integrand = [&ctx, beta, lx](double u) {
        const double ls = ctx.log_sigma(u);
        const double e = ls - (beta + 1.0) * lx - std::exp(ls - beta * lx);
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    return beta * integrate(integrand, 1e-12, 1.0 - 1e-12, 1e-9);
}

double log_stable_norm(const ZolotarevContext& ctx, RngStream& rng) {
    const double u = rng.uniform();
    const double e = rng.exponential();
    return (ctx.log_sigma(u) - std::log(e)) / ctx.beta();
}

double stable_sample(const ZolotarevContext& ctx, double theta, double t,
                     RngStream& rng) {
    if (!(theta > 0.0 && t > 0.0))
        throw std::invalid_argument("stable_sample: theta, t must be positive");
    return std::exp(std::log(theta * t) / ctx.alpha() + log_stable_norm(ctx, rng));
}

double logconcave_unit_sample(const std::function<double(double)>& psi,
                              double u_star, RngStream& rng, long* attempts) {
    constexpr double kEdge = 1e-14;
    const double us = std::clamp(u_star, kEdge, 1.0 - kEdge);

    // psi = 1 crossings on each side of the minimum; clamp to the interval
    // end when psi stays below 1 on that whole side.
    auto crossing = [&psi](double inner, double outer) {
        double lo = inner, hi = outer; // psi(lo) <= 1 <= psi(outer)
        for (int i = 0; i < 100 && std::abs(hi - lo) > 1e-15; ++i) {
            const double m = 0.5 * (lo + hi);
            (psi(m) <= 1.0 ? lo : hi) = m;
        }
        return 0.5 * (lo + hi);
    };
    const double u_plus = psi(1.0 - kEdge) > 1.0 ? crossing(us, 1.0 - kEdge) : 1.0 - kEdge;
    const double u_minus = psi(kEdge) > 1.0 ? crossing(us, kEdge) : kEdge;

    const double wl = std::max(us - u_minus, 0.0);
    const double wr = std::max(u_plus - us, 0.0);
    const double m_mid = u_plus - u_minus;
    // Exponential tails exp(-1-(u-u_plus)/wr) truncated to (u_plus, 1), and
    // the mirror image on (0, u_minus).
    const double m_right =
        (wr > 0.0 && u_plus < 1.0)
            ? std::exp(-1.0) * wr * (-std::expm1(-(1.0 - u_plus) / wr))
            : 0.0;
    const double m_left =
        (wl > 0.0 && u_minus > 0.0)
            ? std::exp(-1.0) * wl * (-std::expm1(-u_minus / wl))
            : 0.0;
    const double total = m_mid + m_left + m_right;

    for (long n = 1;; ++n) {
        double u, log_env;
        const double pick = rng.uniform() * total;
        if (pick < m_mid) {
            u = u_minus + rng.uniform() * m_mid;
            log_env = 0.0;
        } else if (pick < m_mid + m_right) {
            const double v = rng.uniform();
            u = u_plus - wr * std::log1p(v * std::expm1(-(1.0 - u_plus) / wr));
            log_env = -1.0 - (u - u_plus) / wr;
        } else {
            const double v = rng.uniform();
            u = u_minus + wl * std::log1p(v * std::expm1(-u_minus / wl));
            log_env = -1.0 - (u_minus - u) / wl;
        }
        u = std::clamp(u, kEdge, 1.0 - kEdge);
        const double p = psi(u);
        if (-p > log_env + 1e-9 * (1.0 + std::abs(log_env)))
            throw std::runtime_error(
                "logconcave_unit_sample: envelope violated (psi not convex?)");
        if (std::log(rng.uniform()) < -p - log_env) {
            if (attempts) *attempts = n;
            return u;
        }
    }
}

double small_stable_sample(const ZolotarevContext& ctx, double theta, double t,
                           double s, RngStream& rng) {
    if (!(theta > 0.0 && t > 0.0 && s > 0.0))
        throw std::invalid_argument("small_stable_sample: theta, t, s must be positive");
    const double beta = ctx.beta();
    // psi(u) = lambda (sigma(u) - sigma(u*)), lambda = (theta t)^{beta+1} s^{-beta}.
    // Recentring at the searched minimizer keeps psi(u*) exactly 0; everything
    // stays in log space so lambda up to 1e300 never overflows.
    const double log_lambda = (beta + 1.0) * std::log(theta * t) - beta * std::log(s);
    const double ls_star = ctx.log_sigma(ctx.minimizer());
    auto psi = [&ctx, log_lambda, ls_star](double u) {
        const double d = ctx.log_sigma(u) - ls_star;
        if (d <= 0.0) return 0.0;
        const double lp = log_lambda + ls_star + std::log(std::expm1(std::min(d, 700.0)));
        return lp > 690.0 ? 1e300 : std::exp(lp);
    };

    double u = ctx.minimizer();
    // If the target collapses below double spacing around u*, u* is the
    // correctly rounded draw.
    const double probe = std::max(1e-15, 1e-13 * u);
    const bool collapsed = (u - probe <= 0.0 || psi(u - probe) > 50.0) &&
                           (u + probe >= 1.0 || psi(u + probe) > 50.0);
    if (!collapsed) u = logconcave_unit_sample(psi, ctx.minimizer(), rng);

    const double e_prime = rng.exponential();
    const double inv =
        std::pow(s, -beta) +
        std::exp(-(beta + 1.0) * std::log(theta * t) + std::log(e_prime) -
                 ctx.log_sigma(u));
    return std::pow(inv, -1.0 / beta);
}

double small_tempered_stable_sample(const ZolotarevContext& ctx, double theta,
                                    double q, double t, double s, RngStream& rng,
                                    long* loops) {
    if (q < 0.0) throw std::invalid_argument("small_tempered_stable_sample: q >= 0");
    if (q == 0.0) {
        if (loops) *loops = 1;
        return small_stable_sample(ctx, theta, t, s, rng);
    }
    for (long n = 1;; ++n) {
        const double w = small_stable_sample(ctx, theta, t, s, rng);
        if (rng.exponential() > q * w) {
            if (loops) *loops = n;
            return w;
        }
    }
}

double log_stable_neg_moment_sample(const ZolotarevContext& ctx, RngStream& rng,
                                    long* attempts) {
    // In the (U,E) parametrization y = (sigma(U)/E)^{1/beta}, the weight
    // y^{-alpha} = (E/sigma(U))^{1-alpha}; proposing E ~ Gamma(2-alpha)
    // absorbs the E-part and leaves the bounded factor (sigma_lb/sigma(U))^{1-a}.
    const double a = ctx.alpha();
    for (long n = 1;; ++n) {
        const double u = rng.uniform();
        const double g = gamma_one_two(2.0 - a, rng);
        const double log_accept = (1.0 - a) * (ctx.log_sigma_lower_bound() - ctx.log_sigma(u));
        if (std::log(rng.uniform()) < log_accept) {
            if (attempts) *attempts = n;
            return (ctx.log_sigma(u) - std::log(g)) / ctx.beta();
        }
    }
}

} // namespace fpsub
