#include "fpsub/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fpsub/quadrature.hpp"

namespace fpsub {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, const std::string& key) {
    if (v == "inf" || v == "infinity") return kInf;
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "': " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing characters in value for '" + key + "'");
    return x;
}

// Parses "name(a,b,...)" into name + arguments.
struct Preset {
    std::string name;
    std::vector<double> args;
};

Preset parse_preset(const std::string& v, const std::string& key) {
    Preset p;
    const auto open = v.find('(');
    if (open == std::string::npos) {
        p.name = trim(v);
        return p;
    }
    if (v.back() != ')')
        throw std::invalid_argument("config: malformed preset for '" + key + "': " + v);
    p.name = trim(v.substr(0, open));
    std::string inner = v.substr(open + 1, v.size() - open - 2);
    std::stringstream ss(inner);
    std::string tok;
    while (std::getline(ss, tok, ','))
        p.args.push_back(parse_number(trim(tok), key));
    return p;
}

} // namespace

void ModelConfig::set(const std::string& key, const std::string& value) {
    if (key == "alpha") alpha = parse_number(value, key);
    else if (key == "vartheta") vartheta = parse_number(value, key);
    else if (key == "q") q = parse_number(value, key);
    else if (key == "r") {
        if (value == "auto") {
            r_policy = RPolicy::Auto;
        } else {
            r_policy = RPolicy::Explicit;
            r_explicit = parse_number(value, key);
        }
    } else if (key == "r_policy") {
        if (value == "auto") r_policy = RPolicy::Auto;
        else throw std::invalid_argument("config: r_policy only accepts 'auto'");
    } else if (key == "r0") r0 = parse_number(value, key);
    else if (key == "lambda") lambda = value;
    else if (key == "boundary") boundary = value;
    else if (key == "rho") rho = parse_number(value, key);
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_number(value, key));
    else if (key == "drift") drift = parse_number(value, key);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ModelConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    ModelConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

FiniteMeasure make_exp_measure(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exp preset: rate must be positive");
    FiniteMeasure fm;
    fm.mass = 1.0 / rate;
    fm.sampler = [rate](RngStream& rng) { return rng.exponential() / rate; };
    fm.mean_transform = [rate](double u) {
        return 1.0 / rate - 1.0 / (rate + u);
    };
    return fm;
}

FiniteMeasure make_pareto_measure(double exponent, double cut) {
    if (!(exponent > 1.0) || !(cut > 0.0))
        throw std::invalid_argument("pareto preset: need exponent > 1 and cut > 0");
    FiniteMeasure fm;
    fm.mass = std::pow(cut, 1.0 - exponent) / (exponent - 1.0);
    fm.sampler = [exponent, cut](RngStream& rng) {
        return cut * std::pow(rng.uniform(), -1.0 / (exponent - 1.0));
    };
    fm.mean_transform = [exponent, cut](double u) {
        return integrate_right_open(
            [exponent, u](double x) {
                return -std::expm1(-u * x) * std::pow(x, -exponent);
            },
            cut, 1e-10);
    };
    return fm;
}

FiniteMeasure compose_lambda_r(const FiniteMeasure& base, double alpha,
                               double vartheta, double q, double r, double r0) {
    if (r >= r0) return base;
    const double tail_mass = lambda_mass(alpha, vartheta, q, r, r0, 0.0);
    FiniteMeasure fm;
    fm.mass = base.mass + tail_mass;
    const double base_mass = base.mass;
    const double trunc_frac =
        std::isinf(r0) ? 0.0 : 1.0 - std::pow(r / r0, alpha);
    auto base_sampler = base.sampler;
    fm.sampler = [base_sampler, base_mass, tail_mass, alpha, q, r, r0,
                  trunc_frac](RngStream& rng) {
        if (rng.uniform() * (base_mass + tail_mass) < base_mass)
            return base_sampler(rng);
        // x^{-alpha-1} proposal on (r, r0) by inversion, thinned by the
        // tempering factor e^{-q(x-r)} <= 1.
        for (;;) {
            double x;
            if (std::isinf(r0)) {
                x = r * std::exp(-std::log(rng.uniform()) / alpha);
            } else {
                x = r * std::pow(1.0 - rng.uniform() * trunc_frac, -1.0 / alpha);
            }
            if (std::log(rng.uniform()) < -q * (x - r)) return x;
        }
    };
    auto base_mean = base.mean_transform;
    fm.mean_transform = [base_mean, alpha, vartheta, q, r, r0](double u) {
        double v = base_mean ? base_mean(u) : 0.0;
        v += vartheta * integrate_upper(
                 [alpha, q, u](double x) {
                     return -std::expm1(-u * x) * std::exp(-q * x) *
                            std::pow(x, -alpha - 1.0);
                 },
                 r, r0, 1e-10);
        return v;
    };
    return fm;
}

BuiltModel build_model(const ModelConfig& cfg) {
    BuiltModel out;
    const Preset lam = parse_preset(cfg.lambda, "lambda");
    if (lam.name == "none") {
        out.lambda_r0 = FiniteMeasure{};
    } else if (lam.name == "exp") {
        if (lam.args.size() != 1)
            throw std::invalid_argument("config: exp(rate) takes one argument");
        out.lambda_r0 = make_exp_measure(lam.args[0]);
    } else if (lam.name == "pareto") {
        if (lam.args.size() != 2)
            throw std::invalid_argument("config: pareto(exponent,cut) takes two arguments");
        out.lambda_r0 = make_pareto_measure(lam.args[0], lam.args[1]);
    } else {
        throw std::invalid_argument("config: unknown lambda preset '" + lam.name + "'");
    }
    out.lambda_r0_mass = out.lambda_r0.mass;

    const double r = cfg.r_policy == RPolicy::Auto
                         ? resolve_truncation(cfg.r0, cfg.alpha, cfg.q)
                         : cfg.r_explicit;
    FiniteMeasure lambda_r =
        compose_lambda_r(out.lambda_r0, cfg.alpha, cfg.vartheta, cfg.q, r, cfg.r0);
    out.spec = SubordinatorSpec::make(cfg.alpha, cfg.vartheta, cfg.q, r, cfg.r0,
                                      std::move(lambda_r));

    const Preset bd = parse_preset(cfg.boundary, "boundary");
    if (bd.name == "const") {
        if (bd.args.size() != 1)
            throw std::invalid_argument("config: const(c0) takes one argument");
        out.boundary = Boundary::constant(bd.args[0]);
    } else if (bd.name == "linear") {
        if (bd.args.size() != 2)
            throw std::invalid_argument("config: linear(c0,slope) takes two arguments");
        out.boundary = Boundary::linear(bd.args[0], bd.args[1]);
    } else {
        throw std::invalid_argument("config: unknown boundary preset '" + bd.name + "'");
    }

    out.engine.rho = cfg.rho;
    out.engine.seed = cfg.seed;
    out.engine.r_policy = cfg.r_policy;
    out.drift = cfg.drift;
    if (cfg.drift < 0.0)
        throw std::invalid_argument("config: drift must be >= 0");
    if (cfg.drift > 0.0 && !(out.boundary.c0 > 0.0))
        throw std::invalid_argument("config: drift-adjusted boundary must start positive");
    return out;
}

std::string model_json(const ModelConfig& cfg, const BuiltModel& model) {
    nlohmann::json j;
    j["alpha"] = cfg.alpha;
    j["vartheta"] = cfg.vartheta;
    j["q"] = cfg.q;
    j["r0"] = std::isinf(cfg.r0) ? "inf" : nlohmann::json(cfg.r0);
    j["r_policy"] = cfg.r_policy == RPolicy::Auto ? "auto" : "explicit";
    j["r"] = std::isinf(model.spec.r) ? "inf" : nlohmann::json(model.spec.r);
    j["lambda"] = cfg.lambda;
    j["lambda_r_mass"] = model.spec.finite_part.mass;
    j["boundary"] = cfg.boundary;
    j["rho"] = cfg.rho;
    j["seed"] = cfg.seed;
    j["drift"] = cfg.drift;
    j["theta"] = model.spec.theta;
    return j.dump(2) + "\n";
}

} // namespace fpsub
