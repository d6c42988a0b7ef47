#pragma once

#include <functional>

#include "fpsub/rng.hpp"

namespace fpsub {

// Zolotarev machinery for the positive alpha-stable law on (0,1):
// sigma_a(u) = (sin(a pi u)^a sin((1-a) pi u)^{1-a} / sin(pi u))^{beta+1},
// beta = a/(1-a). sigma_a is convex with a finite limit at 0+ and blows up
// at 1-. All evaluation is done in log space.
class ZolotarevContext {
public:
    explicit ZolotarevContext(double alpha);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double sigma_at_zero() const { return sigma_at_zero_; }
    double minimizer() const { return u_star_; }
    double sigma_min() const { return sigma_min_; }
    double log_sigma_min() const { return log_sigma_min_; }
    // Certified value <= inf sigma, used as the constant in exact rejection.
    double log_sigma_lower_bound() const { return log_sigma_lb_; }

    double sigma(double u) const;
    double log_sigma(double u) const;

private:
    double alpha_;
    double beta_;
    double sigma_at_zero_;
    double u_star_;
    double sigma_min_;
    double log_sigma_min_;
    double log_sigma_lb_;
};

// Stable density (theta*t = 1 normalization) by adaptive quadrature of the
// Zolotarev integral; used by oracles and tests only, never by samplers.
// Underflows to 0 for tiny x.
double phi_density(const ZolotarevContext& ctx, double x);

// log of a normalized stable draw, log((sigma(U)/E)^{1/beta}); building block
// shared by the samplers below so extreme alpha never overflows.
double log_stable_norm(const ZolotarevContext& ctx, RngStream& rng);

// One exact draw of S_t for the q=0 tempered-stable law:
// S_t = (theta t)^{1/alpha} (sigma(U)/E)^{1/beta}. May overflow to +inf for
// small alpha; use log_stable_norm when the scale matters.
double stable_sample(const ZolotarevContext& ctx, double theta, double t,
                     RngStream& rng);

// Exact draw from the density proportional to exp(-psi(u)) on (0,1), where
// psi is convex, evaluable, and has minimum 0 at u_star. Envelope: uniform
// centre piece between the psi=1 crossings, exponential tails justified by
// convexity. Throws if the envelope fails to dominate (non-convex psi).
double logconcave_unit_sample(const std::function<double(double)>& psi,
                              double u_star, RngStream& rng,
                              long* attempts = nullptr);

// Exact draw from S_t | {S_t < s} for q = 0.
double small_stable_sample(const ZolotarevContext& ctx, double theta, double t,
                           double s, RngStream& rng);

// Exact draw from S_t | {S_t < s} for q > 0: rejection with the q=0 sampler
// as proposal and acceptance event {Exp(1) > q W}. q = 0 delegates.
double small_tempered_stable_sample(const ZolotarevContext& ctx, double theta,
                                    double q, double t, double s, RngStream& rng,
                                    long* loops = nullptr);

// Exact draw from the density proportional to y^{-alpha} phi_alpha(y): the
// negative-moment tilt of the normalized stable law. Runs in O(1) expected
// time uniformly in alpha. Returns log of the draw.
double log_stable_neg_moment_sample(const ZolotarevContext& ctx, RngStream& rng,
                                    long* attempts = nullptr);

} // namespace fpsub
