#include "fpsub/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "fpsub/zolotarev.hpp"

namespace fpsub {

CppFirstJump cpp_first_jump(const FiniteMeasure& fm, RngStream& rng) {
    CppFirstJump out;
    if (fm.mass > 0.0) {
        out.time = rng.exponential() / fm.mass;
        out.jump = fm.sampler;
    } else {
        out.time = kInf;
        out.jump = [](RngStream&) -> double {
            throw std::logic_error("FiniteMeasure: sampler invoked with zero mass");
        };
    }
    return out;
}

CrossingTriplet sample_crossing(const ZolotarevContext& ctx,
                                const SubordinatorSpec& spec, const Boundary& c,
                                const EngineConfig& cfg, const FptsSampler& fpts,
                                RngStream& rng, std::vector<PathNode>* path) {
    if (!(c.c0 > 0.0))
        throw std::invalid_argument("sample_crossing: c(0) must be positive");
    if (!(cfg.rho > 0.0 && cfg.rho < 1.0))
        throw std::invalid_argument("sample_crossing: rho must lie in (0,1)");

    const double cap = spec.r * cfg.rho; // +inf when r is infinite
    const FiniteMeasure& fm = spec.finite_part;

    double t_acc = 0.0, u_slot = 0.0, v_acc = 0.0;
    Boundary b = boundary_update(c, 0.0, 0.0, cap);
    double d = cpp_first_jump(fm, rng).time;
    Diagnostics diag;
    if (path) {
        path->clear();
        path->push_back({0.0, 0.0});
    }

    for (;;) {
        ++diag.loop_count;
        CrossingTriplet trip = truncated_triplet(ctx, spec.theta, spec.q, spec.r,
                                                 b, fpts, rng);
        diag.absorb(trip.diagnostics);
        if (d > trip.time) {
            // Y crosses b before Q jumps.
            t_acc += trip.time;
            u_slot = v_acc + trip.undershoot;
            v_acc += trip.overshoot;
            d -= trip.time;
        } else {
            // Q jumps first: state of Y at time D, conditioned below b(D),
            // then the compound-Poisson jump on top. b(D) <= r rho < r keeps
            // the untruncated conditional sampler valid for Y.
            const double level = b(d);
            if (!(level > 0.0))
                throw std::logic_error("sample_crossing: conditional level not positive");
            const double w =
                small_tempered_stable_sample(ctx, spec.theta, spec.q, d, level, rng);
            const double j = fm.sampler(rng);
            if (!(j > 0.0))
                throw std::logic_error("FiniteMeasure: sampler returned a non-positive jump");
            t_acc += d;
            u_slot = v_acc + w;
            v_acc += w + j;
            ++diag.cpp_jump_count;
            d = cpp_first_jump(fm, rng).time;
        }
        ++diag.undershoot_writes;
        b = boundary_update(c, t_acc, v_acc, cap);
        if (path) path->push_back({t_acc, v_acc});
        if (b.c0 <= 0.0) break;
    }

    CrossingTriplet out;
    out.time = t_acc;
    out.undershoot = u_slot;
    out.overshoot = v_acc;
    out.diagnostics = diag;
    return out;
}

CrossingTriplet sample_crossing(const SubordinatorSpec& spec, const Boundary& c,
                                const EngineConfig& cfg, const FptsSampler& fpts,
                                RngStream& rng, std::vector<PathNode>* path) {
    ZolotarevContext ctx(spec.alpha);
    return sample_crossing(ctx, spec, c, cfg, fpts, rng, path);
}

CrossingTriplet sample_crossing(const SubordinatorSpec& spec, const Boundary& c,
                                const EngineConfig& cfg, RngStream& rng,
                                std::vector<PathNode>* path) {
    ZolotarevContext ctx(spec.alpha);
    const FptsSampler fpts = [&ctx, &spec](const Boundary& f, RngStream& r) {
        return fpts_default(ctx, spec.theta, spec.q, f, r);
    };
    return sample_crossing(ctx, spec, c, cfg, fpts, rng, path);
}

} // namespace fpsub
