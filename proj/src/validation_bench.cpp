#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "fpsub/validation.hpp"

namespace fpsub {

namespace {

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

FiniteMeasure exp_measure() {
    // lambda_{r0}(dx) = e^{-x} dx: mass 1, mean transform u/(1+u).
    FiniteMeasure fm;
    fm.mass = 1.0;
    fm.sampler = [](RngStream& rng) { return rng.exponential(); };
    fm.mean_transform = [](double u) { return u / (1.0 + u); };
    return fm;
}

// lambda_r for the benchmark model: e^{-x}dx plus the tail of the stable
// part reassigned beyond the truncation level.
FiniteMeasure bench_lambda_r(double alpha, double vartheta, double q, double r) {
    FiniteMeasure base = exp_measure();
    if (std::isinf(r)) return base;
    const double tail_mass = lambda_mass(alpha, vartheta, q, r, kInf, 0.0);
    FiniteMeasure fm;
    fm.mass = base.mass + tail_mass;
    const double base_mass = base.mass;
    auto base_sampler = base.sampler;
    fm.sampler = [base_sampler, base_mass, tail_mass, alpha, q,
                  r](RngStream& rng) {
        if (rng.uniform() * (base_mass + tail_mass) < base_mass)
            return base_sampler(rng);
        // Pareto proposal on (r, inf) thinned by the tempering factor.
        for (;;) {
            const double x = r * std::exp(-std::log(rng.uniform()) / alpha);
            if (std::log(rng.uniform()) < -q * (x - r)) return x;
        }
    };
    fm.mean_transform = nullptr; // not needed by the benchmark
    return fm;
}

} // namespace

BenchPoint bench_point(double alpha, double q, double vartheta, double c0,
                       const BenchSettings& settings, std::uint64_t point_key) {
    BenchPoint pt;
    pt.alpha = alpha;
    pt.q = q;
    pt.vartheta = vartheta;
    pt.c0 = c0;
    pt.rho = 0.5;
    pt.n = settings.n_per_point;
    pt.r = resolve_truncation(kInf, alpha, q);

    SubordinatorSpec spec = SubordinatorSpec::make(
        alpha, vartheta, q, pt.r, kInf, bench_lambda_r(alpha, vartheta, q, pt.r));
    const Boundary c = Boundary::constant(c0);
    EngineConfig cfg;
    cfg.rho = pt.rho;

    ZolotarevContext ctx(alpha);
    const FptsSampler fpts = [&ctx, &spec](const Boundary& f, RngStream& r) {
        return fpts_default(ctx, spec.theta, spec.q, f, r);
    };

    RngStream root(settings.seed);
    RngStream stream = root.split(point_key);

    std::vector<double> secs;
    secs.reserve(pt.n);
    double sum_m = 0.0, sum_k = 0.0;
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(settings.timeout_seconds);
    for (std::size_t i = 0; i < pt.n; ++i) {
        if (std::chrono::steady_clock::now() > deadline) {
            pt.complete = false;
            pt.mean_s = pt.median_s = pt.p90_s =
                std::numeric_limits<double>::quiet_NaN();
            return pt;
        }
        RngStream sub = stream.split(i);
        const auto t0 = std::chrono::steady_clock::now();
        const CrossingTriplet trip = sample_crossing(ctx, spec, c, cfg, fpts, sub);
        const auto t1 = std::chrono::steady_clock::now();
        secs.push_back(std::chrono::duration<double>(t1 - t0).count());
        sum_m += static_cast<double>(trip.diagnostics.loop_count);
        sum_k += static_cast<double>(trip.diagnostics.cpp_jump_count);
    }
    const double per_1e4 = 1e4; // report seconds per 1e4 samples
    pt.mean_s = summarize(secs).mean * per_1e4;
    pt.median_s = percentile(secs, 0.5) * per_1e4;
    pt.p90_s = percentile(secs, 0.9) * per_1e4;
    pt.mean_M = sum_m / static_cast<double>(pt.n);
    pt.mean_K = sum_k / static_cast<double>(pt.n);
    pt.complete = true;
    return pt;
}

std::vector<BenchPoint> bench_grid_fig2(const BenchSettings& settings) {
    std::vector<BenchPoint> out;
    std::uint64_t key = 1;
    for (int i = 1; i <= 19; ++i) {
        const double alpha = 0.05 * i;
        out.push_back(bench_point(alpha, 10.0, 2.0, 5.0, settings, key++));
    }
    return out;
}

std::vector<BenchPoint> bench_grid_fig3(const BenchSettings& settings) {
    std::vector<BenchPoint> out;
    out.push_back(bench_point(0.25, 1.0, 2.0, 5.0, settings, 101));
    out.push_back(bench_point(0.95, 100.0, 2.0, 5.0, settings, 102));
    out.push_back(bench_point(0.98, 100.0, 2.0, 5.0, settings, 103));
    return out;
}

std::string bench_csv(const std::vector<BenchPoint>& points) {
    std::ostringstream os;
    os << "alpha,q,vartheta,c0,r,rho,n,mean_s,median_s,p90_s,mean_M,mean_K\n";
    for (const auto& p : points) {
        os << fmt(p.alpha) << ',' << fmt(p.q) << ',' << fmt(p.vartheta) << ','
           << fmt(p.c0) << ',' << fmt(p.r) << ',' << fmt(p.rho) << ',' << p.n
           << ',' << fmt(p.mean_s) << ',' << fmt(p.median_s) << ','
           << fmt(p.p90_s) << ',' << fmt(p.mean_M) << ',' << fmt(p.mean_K)
           << '\n';
    }
    return os.str();
}

} // namespace fpsub
