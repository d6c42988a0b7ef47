#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>

#include "fpsub/rng.hpp"

namespace fpsub {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite-activity jump component: total mass, a normalized jump-size sampler
// and u -> int (1 - e^{-ux}) d(lambda) used only for bound evaluation.
// mass == 0 means the component is absent; the sampler must then never be
// invoked (the engine treats the first jump time as +inf).
struct FiniteMeasure {
    double mass = 0.0;
    std::function<double(RngStream&)> sampler;
    std::function<double(double)> mean_transform;
};

// Non-increasing absolutely continuous boundary with c(0) > 0 at the top
// level. Monotonicity is a declared contract, spot-checked by tests.
// constant_level is set whenever constancy is known by construction; the
// first-passage samplers use it to take closed-form paths.
struct Boundary {
    std::function<double(double)> eval;
    double c0 = 0.0;
    std::optional<double> constant_level;
    std::optional<std::pair<double, double>> inverse_hint;

    double operator()(double t) const { return eval(t); }
    bool is_constant() const { return constant_level.has_value(); }

    static Boundary constant(double level);
    // max(c0 - slope*t, 0) with slope >= 0
    static Boundary linear(double c0, double slope);
    static Boundary from_function(std::function<double(double)> f);
};

struct Diagnostics {
    long loop_count = 0;        // iterations of the main crossing loop (M)
    long cpp_jump_count = 0;    // compound-Poisson jumps consumed (K)
    long fpts_call_count = 0;   // first-passage proposals drawn
    long truncation_rejects = 0; // proposals discarded by the V-U <= r test
    long window_attempts = 0;   // tilting-window proposals in the tempered sampler
    long undershoot_attempts = 0;
    long undershoot_writes = 0; // overwrites of the undershoot accumulator

    void absorb(const Diagnostics& d) {
        fpts_call_count += d.fpts_call_count;
        truncation_rejects += d.truncation_rejects;
        window_attempts += d.window_attempts;
        undershoot_attempts += d.undershoot_attempts;
    }
};

// First-passage triplet (crossing time, level just before, level just after).
struct CrossingTriplet {
    double time = 0.0;
    double undershoot = 0.0;
    double overshoot = 0.0;
    Diagnostics diagnostics;
};

// Parameters of the subordinator: small-jump part vartheta e^{-qx} x^{-alpha-1}
// truncated at r, plus the finite measure lambda_r. theta is derived so the
// associated tempered stable law has Laplace exponent theta((q+u)^a - q^a).
struct SubordinatorSpec {
    double alpha = 0.5;
    double vartheta = 1.0;
    double q = 0.0;
    double r = kInf;
    double r0 = kInf;
    FiniteMeasure finite_part;
    double theta = 0.0;

    static SubordinatorSpec make(double alpha, double vartheta, double q,
                                 double r, double r0, FiniteMeasure finite_part);
};

enum class RPolicy { Explicit, Auto };

struct EngineConfig {
    double rho = 0.5;
    int precision_bits = 64; // informational, bound reporting only
    std::uint64_t seed = kDefaultSeed;
    RPolicy r_policy = RPolicy::Explicit;

    static constexpr std::uint64_t kDefaultSeed = 0x5eed0f1257a61ULL;
};

// r = min(r0, 2 alpha / q) for q > 0, r = r0 for q = 0.
double resolve_truncation(double r0, double alpha, double q);

// Total mass of lambda_r: Lambda_{r0} + vartheta int_r^{r0} e^{-qx} x^{-a-1} dx.
double lambda_mass(double alpha, double vartheta, double q, double r, double r0,
                   double lambda_r0_mass);
double lambda_mass(const SubordinatorSpec& spec, double lambda_r0_mass);

// Piecewise lower bound for u -> int_0^r (1-e^{-ux}) e^{-qx} x^{-a-1} dx / vartheta.
double upsilon(double u, double r, double q);

// Expected-running-time bracket: the product
// (T0/(1-rho^a) + e^{q min(c0, r rho)}) (Lambda_r/(psi0 + vt*Upsilon(1/(1+c0),r0,q)) + c0/(r rho))
// without the unspecified absolute constant.
double complexity_bracket(const SubordinatorSpec& spec, double c0, double rho,
                          double T0, double psi0);

// Levy-density decomposition pi2(t) = e^{-b t} pi1(t) 1{t<=r} + xi_bar(t),
// given the caller's certificate (1-a1 t) pi1 <= pi2 <= (1+a2 t) pi1 on
// (0, r_cert]. xi_bar is validated nonnegative on a log-spaced grid.
struct DensityDecomposition {
    double b_tilt = 0.0;
    double r = 0.0;
    std::function<double(double)> xi_bar;
};
DensityDecomposition decompose_density(const std::function<double(double)>& pi2,
                                       const std::function<double(double)>& pi1,
                                       double a1, double a2, double r_cert);

// t -> min{c(t + t_shift) - v_shift, cap}. The result may have b(0) <= 0,
// which the engine reads as its termination signal.
Boundary boundary_update(const Boundary& c, double t_shift, double v_shift,
                         double cap);

// Undo the drift reduction: triplet sampled against c~(t) = c(t) - mu t maps
// to (T, U + mu T, V + mu T).
CrossingTriplet drift_adjust(const CrossingTriplet& triplet, double mu);

} // namespace fpsub
