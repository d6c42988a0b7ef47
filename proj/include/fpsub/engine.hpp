#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fpsub/model.hpp"
#include "fpsub/stable_fp.hpp"

namespace fpsub {

// First jump of the compound Poisson component: time D ~ Exp(mass), +inf
// when the measure is empty. The jump size is drawn lazily through `jump`
// only on the branch that needs it.
struct CppFirstJump {
    double time = kInf;
    std::function<double(RngStream&)> jump;
};
CppFirstJump cpp_first_jump(const FiniteMeasure& fm, RngStream& rng);

// One point of the recorded piecewise-constant trajectory skeleton
// (loop-boundary times and process values); consumed by the Feynman-Kac
// source-term quadrature.
struct PathNode {
    double time;
    double value;
};

// Exact draw of the first-passage triplet of Z = Y + Q over the boundary c,
// interleaving truncated tempered-stable crossings with compound-Poisson
// jumps. Diagnostics carry the loop count M and the jump count K.
CrossingTriplet sample_crossing(const SubordinatorSpec& spec, const Boundary& c,
                                const EngineConfig& cfg, const FptsSampler& fpts,
                                RngStream& rng,
                                std::vector<PathNode>* path = nullptr);

// Convenience overloads: default FPTS implementation, and a caller-supplied
// ZolotarevContext for hot loops.
CrossingTriplet sample_crossing(const SubordinatorSpec& spec, const Boundary& c,
                                const EngineConfig& cfg, RngStream& rng,
                                std::vector<PathNode>* path = nullptr);
CrossingTriplet sample_crossing(const ZolotarevContext& ctx,
                                const SubordinatorSpec& spec, const Boundary& c,
                                const EngineConfig& cfg, const FptsSampler& fpts,
                                RngStream& rng,
                                std::vector<PathNode>* path = nullptr);

} // namespace fpsub
