#pragma once

#include <functional>

#include "fpsub/model.hpp"
#include "fpsub/rng.hpp"
#include "fpsub/zolotarev.hpp"

namespace fpsub {

// Contract for the first-passage step of the tempered stable subordinator S:
// given a non-increasing boundary f with f(0) > 0, produce an exact draw of
// (tau_f^S, S_{tau-}, S_tau). The engine accepts any implementation.
using FptsSampler = std::function<CrossingTriplet(const Boundary&, RngStream&)>;

// Global bound M_a on h(x,u) = sigma(u) x^{-beta-1} exp(-sigma(u) x^{-beta}).
double h_bound(double alpha);
double log_h_bound(double alpha);

// Crossing time of the stable subordinator (q = 0) over g: draws zeta_1 and
// inverts t^{-1/alpha} g(t) = zeta_1. Constant boundaries solve in closed
// form; otherwise monotone bisection to 1e-12 relative. level_out receives
// g(tau).
double stable_crossing_time(const ZolotarevContext& ctx, double theta,
                            const Boundary& g, RngStream& rng,
                            double* level_out = nullptr);

// Deterministic bisection kernel behind stable_crossing_time, exposed so
// tests can run it against the closed form on constant boundaries.
double crossing_time_bisect(double alpha, const Boundary& g, double log_zeta);

// Conditional undershoot at a known crossing time: density proportional to
// g_tau(u) (level-u)^{-alpha} on (0, level). Beta(1,1-alpha) proposal with
// randomized acceptance h((theta tau)^{-1/alpha} u, U') / M_alpha. The
// rejection loop is a.s. finite but heavy-tailed.
double stable_undershoot(const ZolotarevContext& ctx, double theta, double tau,
                         double level, RngStream& rng, long* attempts = nullptr);

// Jump conditioned to clear the boundary: v = u + (level-u) W^{-1/alpha}.
double stable_overshoot(const ZolotarevContext& ctx, double u, double level,
                        RngStream& rng);

// Exact stable (q=0) first-passage triplet. Constant boundaries take the
// marginal factorization (undershoot/level ~ Beta(alpha,1-alpha), crossing
// time from the negative-moment tilt), which runs in O(1) uniformly in
// alpha; general boundaries compose the three operations above.
CrossingTriplet stable_triplet(const ZolotarevContext& ctx, double theta,
                               const Boundary& g, RngStream& rng);

// The two concrete paths, exposed for cross-validation tests.
CrossingTriplet stable_triplet_general(const ZolotarevContext& ctx, double theta,
                                       const Boundary& g, RngStream& rng);
CrossingTriplet stable_triplet_constant(const ZolotarevContext& ctx, double theta,
                                        double level, RngStream& rng);

// Default tempered-stable first-passage sampler: windowed exponential
// tilting with window length t* = 1/(theta q^alpha), so every window weight
// is bounded by e. q = 0 delegates to stable_triplet.
CrossingTriplet fpts_default(const ZolotarevContext& ctx, double theta, double q,
                             const Boundary& f, RngStream& rng);

FptsSampler make_fpts_default(double alpha, double theta, double q);

// Thinning step for the r-truncated process: repeat fpts draws until
// V - U <= r. Requires the boundary to stay below r (checked at 0 and on a
// small grid).
CrossingTriplet truncated_triplet(const ZolotarevContext& ctx, double theta,
                                  double q, double r, const Boundary& b,
                                  const FptsSampler& fpts, RngStream& rng);

} // namespace fpsub
