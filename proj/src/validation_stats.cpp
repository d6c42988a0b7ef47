#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpsub/validation.hpp"

namespace fpsub {

namespace {

// Asymptotic Kolmogorov survival function with the finite-sample correction
// lambda -> (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D.
double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) *
                            std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-14) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double ks_p(double d, double n_eff) {
    const double rt = std::sqrt(n_eff);
    return kolmogorov_q((rt + 0.12 + 0.11 / rt) * d);
}

void require_clean(const std::vector<double>& xs, const char* who) {
    for (double x : xs)
        if (std::isnan(x)) throw std::invalid_argument(std::string(who) + ": NaN sample");
}

} // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.size() < 100 || b.size() < 100)
        throw std::invalid_argument("ks_two_sample: need at least 100 samples per side");
    require_clean(a, "ks_two_sample");
    require_clean(b, "ks_two_sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double n_eff = na * nb / (na + nb);
    return {d, ks_p(d, n_eff)};
}

KsResult ks_one_sample(std::vector<double> samples,
                       const std::function<double(double)>& cdf) {
    if (samples.size() < 100)
        throw std::invalid_argument("ks_one_sample: need at least 100 samples");
    require_clean(samples, "ks_one_sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max((i + 1.0) / n - f, f - i / n));
    }
    return {d, ks_p(d, n)};
}

LaplaceCheck laplace_check(const std::vector<double>& samples, double u,
                           double theta, double q, double alpha, double t) {
    if (!(u > 0.0)) throw std::invalid_argument("laplace_check: u must be positive");
    LaplaceCheck out;
    double sum = 0.0, sum2 = 0.0;
    for (double s : samples) {
        const double e = std::exp(-u * s);
        sum += e;
        sum2 += e * e;
    }
    const double n = static_cast<double>(samples.size());
    out.estimate = sum / n;
    const double var = std::max(sum2 / n - out.estimate * out.estimate, 0.0);
    out.std_error = std::sqrt(var / n);
    out.reference =
        std::exp((std::pow(q, alpha) - std::pow(u + q, alpha)) * theta * t);
    out.z_score = out.std_error > 0.0
                      ? (out.estimate - out.reference) / out.std_error
                      : 0.0;
    return out;
}

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std_error = s.n > 1 ? std::sqrt(ss / (static_cast<double>(s.n) *
                                            (static_cast<double>(s.n) - 1.0)))
                          : 0.0;
    return s;
}

double percentile(std::vector<double> xs, double p) {
    if (xs.empty()) throw std::invalid_argument("percentile: empty sample");
    std::sort(xs.begin(), xs.end());
    const double idx = std::clamp(p, 0.0, 1.0) * (xs.size() - 1.0);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double w = idx - static_cast<double>(lo);
    return (1.0 - w) * xs[lo] + w * xs[hi];
}

} // namespace fpsub
