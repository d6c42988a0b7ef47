#pragma once

#include <cstdint>
#include <string>

#include "fpsub/model.hpp"

namespace fpsub {

// Plain-text key=value model configuration. Recognized keys: alpha, vartheta,
// q, r (number or r_policy=auto), r0, lambda (exp(rate) | pareto(exponent,cut)
// | none), boundary (const(c0) | linear(c0,slope)), rho, seed, drift.
// Unknown keys are rejected.
struct ModelConfig {
    double alpha = 0.5;
    double vartheta = 1.0;
    double q = 0.0;
    double r0 = kInf;
    RPolicy r_policy = RPolicy::Auto;
    double r_explicit = kInf;
    std::string lambda = "none";
    std::string boundary = "const(1)";
    double rho = 0.5;
    std::uint64_t seed = EngineConfig::kDefaultSeed;
    double drift = 0.0;

    void set(const std::string& key, const std::string& value);
};

ModelConfig parse_config_file(const std::string& path);

// lambda_{r0} preset measures.
FiniteMeasure make_exp_measure(double rate);            // e^{-rate x} dx
FiniteMeasure make_pareto_measure(double exponent, double cut); // 1{x>=cut} x^{-exponent} dx

// lambda_r = lambda_{r0} + the stable tail reassigned from (r, r0]; sampling
// by truncated-Pareto proposal thinned with the tempering factor.
FiniteMeasure compose_lambda_r(const FiniteMeasure& base, double alpha,
                               double vartheta, double q, double r, double r0);

struct BuiltModel {
    SubordinatorSpec spec;   // carries the composite lambda_r
    FiniteMeasure lambda_r0; // the user-level measure, for bound evaluation
    double lambda_r0_mass = 0.0;
    Boundary boundary;       // before any drift adjustment
    EngineConfig engine;
    double drift = 0.0;
};

BuiltModel build_model(const ModelConfig& cfg);

// Resolved-configuration echo written next to every output file.
std::string model_json(const ModelConfig& cfg, const BuiltModel& model);

} // namespace fpsub
