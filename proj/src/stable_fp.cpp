#include "fpsub/stable_fp.hpp"

#include <cmath>
#include <stdexcept>

namespace fpsub {

double log_h_bound(double alpha) {
    return (1.0 - 1.0 / alpha) * std::log1p(-alpha) -
           (1.0 + 1.0 / alpha) * std::log(alpha) - 1.0 / alpha;
}

double h_bound(double alpha) { return std::exp(log_h_bound(alpha)); }

double crossing_time_bisect(double alpha, const Boundary& g, double log_zeta) {
    // F(t) = -log(t)/alpha + log g(t) is strictly decreasing while g > 0;
    // solve F(t) = log_zeta.
    auto F = [&g, alpha](double t) {
        const double gt = g(t);
        if (gt <= 0.0) return -kInf;
        return -std::log(t) / alpha + std::log(gt);
    };
    double lo = 1.0, hi = 1.0;
    if (g.inverse_hint) {
        lo = g.inverse_hint->first;
        hi = g.inverse_hint->second;
    }
    int guard = 0;
    while (F(lo) <= log_zeta) {
        lo *= 0.5;
        if (++guard > 1000)
            throw std::runtime_error("crossing_time_bisect: bracket failure (lower)");
    }
    guard = 0;
    while (F(hi) > log_zeta) {
        hi *= 2.0;
        if (++guard > 1000)
            throw std::runtime_error("crossing_time_bisect: bracket failure (upper)");
    }
    // Bisect in log t for relative tolerance.
    double llo = std::log(lo), lhi = std::log(hi);
    while (lhi - llo > 1e-12) {
        const double lm = 0.5 * (llo + lhi);
        (F(std::exp(lm)) > log_zeta ? llo : lhi) = lm;
    }
    return std::exp(0.5 * (llo + lhi));
}

double stable_crossing_time(const ZolotarevContext& ctx, double theta,
                            const Boundary& g, RngStream& rng,
                            double* level_out) {
    if (!(g.c0 > 0.0))
        throw std::invalid_argument("stable_crossing_time: g(0) must be positive");
    const double log_zeta =
        std::log(theta) / ctx.alpha() + log_stable_norm(ctx, rng);
    double tau;
    if (g.is_constant()) {
        tau = std::exp(ctx.alpha() * (std::log(*g.constant_level) - log_zeta));
    } else {
        tau = crossing_time_bisect(ctx.alpha(), g, log_zeta);
    }
    if (level_out) *level_out = g.is_constant() ? *g.constant_level : g(tau);
    return tau;
}

double stable_undershoot(const ZolotarevContext& ctx, double theta, double tau,
                         double level, RngStream& rng, long* attempts) {
    if (!(tau > 0.0 && level > 0.0))
        throw std::invalid_argument("stable_undershoot: tau, level must be positive");
    const double a = ctx.alpha();
    const double beta = ctx.beta();
    const double log_scale = -std::log(theta * tau) / a; // log (theta tau)^{-1/alpha}
    const double log_M = log_h_bound(a);
    for (long n = 1;; ++n) {
        const double b = -std::expm1(std::log1p(-rng.uniform()) / (1.0 - a));
        const double u = b * level;
        if (!(u > 0.0)) continue;
        const double log_x = log_scale + std::log(u);
        const double ls = ctx.log_sigma(rng.uniform());
        const double expo = ls - beta * log_x;
        const double log_h =
            ls - (beta + 1.0) * log_x - (expo > 700.0 ? kInf : std::exp(expo));
        if (std::log(rng.uniform()) < log_h - log_M) {
            if (attempts) *attempts = n;
            return u;
        }
    }
}

double stable_overshoot(const ZolotarevContext& ctx, double u, double level,
                        RngStream& rng) {
    if (!(u >= 0.0 && u <= level))
        throw std::invalid_argument("stable_overshoot: need 0 <= u <= level");
    const double gap = level - u;
    double v = u + gap * std::exp(-std::log(rng.uniform()) / ctx.alpha());
    // The true overshoot is strictly above the level; restore strictness when
    // the gap rounds away at double resolution.
    if (!(v > level)) v = std::nextafter(level, kInf);
    return v;
}

CrossingTriplet stable_triplet_general(const ZolotarevContext& ctx, double theta,
                                       const Boundary& g, RngStream& rng) {
    CrossingTriplet out;
    double level = 0.0;
    out.time = stable_crossing_time(ctx, theta, g, rng, &level);
    if (!(level > 0.0))
        throw std::logic_error("stable_triplet: boundary vanished at the crossing time");
    long attempts = 0;
    out.undershoot = stable_undershoot(ctx, theta, out.time, level, rng, &attempts);
    out.overshoot = stable_overshoot(ctx, out.undershoot, level, rng);
    out.diagnostics.fpts_call_count = 1;
    out.diagnostics.undershoot_attempts = attempts;
    return out;
}

CrossingTriplet stable_triplet_constant(const ZolotarevContext& ctx, double theta,
                                        double level, RngStream& rng) {
    if (!(level > 0.0))
        throw std::invalid_argument("stable_triplet_constant: level must be positive");
    const double a = ctx.alpha();
    // Undershoot marginal: u/level ~ Beta(alpha, 1-alpha); crossing time given
    // the undershoot comes from the negative-moment tilt of the stable law.
    const auto [b, b_comp] = beta_johnk(a, 1.0 - a, rng);
    const double u = b * level;
    long attempts = 0;
    const double log_y = log_stable_neg_moment_sample(ctx, rng, &attempts);
    CrossingTriplet out;
    out.time = std::exp(a * (std::log(u) - log_y) - std::log(theta));
    out.undershoot = u;
    double v = u + b_comp * level * std::exp(-std::log(rng.uniform()) / a);
    if (!(v > level)) v = std::nextafter(level, kInf);
    out.overshoot = v;
    out.diagnostics.fpts_call_count = 1;
    out.diagnostics.undershoot_attempts = attempts;
    return out;
}

CrossingTriplet stable_triplet(const ZolotarevContext& ctx, double theta,
                               const Boundary& g, RngStream& rng) {
    if (g.is_constant()) return stable_triplet_constant(ctx, theta, *g.constant_level, rng);
    return stable_triplet_general(ctx, theta, g, rng);
}

CrossingTriplet fpts_default(const ZolotarevContext& ctx, double theta, double q,
                             const Boundary& f, RngStream& rng) {
    if (!(f.c0 > 0.0))
        throw std::invalid_argument("fpts_default: f(0) must be positive");
    if (q == 0.0) return stable_triplet(ctx, theta, f, rng);

    const double a = ctx.alpha();
    const double rate = theta * std::pow(q, a); // log-Laplace drift theta q^alpha
    const double t_star = 1.0 / rate;

    double t_acc = 0.0, v_acc = 0.0;
    Boundary g = f;
    Diagnostics diag;
    for (;;) {
        ++diag.window_attempts;
        CrossingTriplet prop = stable_triplet(ctx, theta, g, rng);
        diag.absorb(prop.diagnostics);
        if (prop.time <= t_star) {
            // Proposal crossed within the window; tilt weight e^{rate T' - q V'}.
            const double log_w = rate * prop.time - q * prop.overshoot;
            if (log_w > 1.0 + 1e-9)
                throw std::logic_error("fpts_default: window weight exceeded e");
            if (std::log(rng.uniform()) < log_w - 1.0) {
                CrossingTriplet out;
                out.time = t_acc + prop.time;
                out.undershoot = v_acc + prop.undershoot;
                out.overshoot = v_acc + prop.overshoot;
                out.diagnostics = diag;
                return out;
            }
        } else {
            // No crossing by t*; resample the window state from the
            // conditional marginal (no crossing == staying below g(t*)).
            const double s = g(t_star);
            if (!(s > 0.0))
                throw std::logic_error("fpts_default: no-crossing proposal with vanished boundary");
            const double w = small_stable_sample(ctx, theta, t_star, s, rng);
            const double log_w = 1.0 - q * w; // rate * t_star == 1
            if (std::log(rng.uniform()) < log_w - 1.0) {
                t_acc += t_star;
                v_acc += w;
                g = boundary_update(g, t_star, w, kInf);
            }
        }
    }
}

FptsSampler make_fpts_default(double alpha, double theta, double q) {
    ZolotarevContext ctx(alpha);
    return [ctx, theta, q](const Boundary& f, RngStream& rng) {
        return fpts_default(ctx, theta, q, f, rng);
    };
}

CrossingTriplet truncated_triplet(const ZolotarevContext& ctx, double theta,
                                  double q, double r, const Boundary& b,
                                  const FptsSampler& fpts, RngStream& rng) {
    // b non-increasing, so b(0) <= r bounds the whole boundary; probe a few
    // more points to catch mis-declared closures.
    for (double t : {0.0, 0.5, 1.0, 8.0}) {
        if (b(t) > r)
            throw std::invalid_argument("truncated_triplet: boundary exceeds the truncation level");
    }
    Diagnostics diag;
    for (;;) {
        CrossingTriplet trip = fpts(b, rng);
        diag.absorb(trip.diagnostics);
        if (trip.overshoot - trip.undershoot <= r) {
            trip.diagnostics = diag;
            return trip;
        }
        ++diag.truncation_rejects;
    }
}

} // namespace fpsub
