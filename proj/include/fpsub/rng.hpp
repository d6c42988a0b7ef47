#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace fpsub {

// Seedable, splittable stream of uniforms (xoshiro256++ core, splitmix64
// seeding). Every sampler in this library draws exclusively from one of
// these, so a (parameters, seed) pair fully determines any output.
//
// split(key) derives a child stream from the *origin* seed and the key,
// independent of how many variates the parent has consumed. This keeps
// fan-out across draws/threads deterministic under any scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : origin_(seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = mix64(s += 0x9E3779B97F4A7C15ULL);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Exp(1) by inversion, E = -log(1-U).
    double exponential() { return -std::log1p(-uniform()); }

    std::uint64_t origin_seed() const { return origin_; }

    RngStream split(std::uint64_t key) const {
        return RngStream(mix64(origin_ + 0x9E3779B97F4A7C15ULL * (key + 1)));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27; z *= 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t origin_;
};

// Beta(a,b) via Johnk's rejection; returns the pair (B, 1-B) so callers can
// keep the small side at full relative precision when B saturates near 1.
// Acceptance is Gamma(1+a)Gamma(1+b)/Gamma(1+a+b) >= 0.78 for a+b <= 1.
inline std::pair<double, double> beta_johnk(double a, double b, RngStream& rng) {
    for (;;) {
        const double x = std::pow(rng.uniform(), 1.0 / a);
        const double y = std::pow(rng.uniform(), 1.0 / b);
        const double s = x + y;
        if (s <= 1.0 && s > 0.0) return {x / s, y / s};
    }
}

// Gamma(k) for k in (1,2) via the beta-gamma identity
// Gamma(k) = Exp(1) + Beta(k-1, 2-k) * Exp(1); inversion + Johnk only.
inline double gamma_one_two(double k, RngStream& rng) {
    const double b = beta_johnk(k - 1.0, 2.0 - k, rng).first;
    return rng.exponential() + b * rng.exponential();
}

} // namespace fpsub
