#include "fpsub/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fpsub {
namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule (QUADPACK dqk15 constants). Gauss nodes are the odd-indexed Kronrod
// nodes plus the centre.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
};

Interval gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double dx = h * kXgk[j];
        const double fv = (j == 7) ? f(c) : f(c - dx) + f(c + dx);
        if (!std::isfinite(fv))
            throw std::runtime_error("quadrature: non-finite integrand value");
        resk += kWgk[j] * fv;
        if (j % 2 == 1) resg += kWg[j / 2] * fv;
        if (j == 7) resg += kWg[3] * fv;
    }
    return {lo, hi, resk * h, std::abs((resk - resg) * h)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    if (!(b > a)) return 0.0;
    std::vector<Interval> parts;
    parts.push_back(gk15(f, a, b));
    double total = parts[0].value;
    double err = parts[0].error;
    const int max_intervals = 4000;
    while (err > rel_tol * std::max(std::abs(total), 1e-300) && err > 1e-305) {
        if (static_cast<int>(parts.size()) >= max_intervals)
            throw std::runtime_error("quadrature: failed to converge");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i].error > parts[worst].error) worst = i;
        const Interval iv = parts[worst];
        const double mid = 0.5 * (iv.a + iv.b);
        if (!(mid > iv.a && mid < iv.b)) break; // interval at double resolution
        const Interval left = gk15(f, iv.a, mid);
        const Interval right = gk15(f, mid, iv.b);
        total += left.value + right.value - iv.value;
        err += left.error + right.error - iv.error;
        parts[worst] = left;
        parts.push_back(right);
    }
    if (!std::isfinite(total))
        throw std::runtime_error("quadrature: non-finite result");
    return total;
}

double integrate_right_open(const std::function<double(double)>& f, double a,
                            double rel_tol) {
    auto g = [&f, a](double t) {
        const double u = 1.0 - t;
        const double x = a + t / u;
        return f(x) / (u * u);
    };
    // Stay away from t=1 where the weight blows up; integrand must decay.
    return integrate(g, 0.0, 1.0 - 1e-14, rel_tol);
}

double integrate_singular_lower(const std::function<double(double)>& g,
                                double alpha, double r, double rel_tol) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("integrate_singular_lower: r must be finite positive");
    // x = r e^{-z}:  int_0^r g(x) x^{-alpha-1} dx = r^{-alpha} int_0^inf g(r e^{-z}) e^{alpha z} dz
    auto h = [&g, alpha, r](double z) {
        const double x = r * std::exp(-z);
        if (x <= 0.0) return 0.0;
        return g(x) * std::exp(alpha * z);
    };
    return std::pow(r, -alpha) * integrate_right_open(h, 0.0, rel_tol);
}

double integrate_upper(const std::function<double(double)>& f, double r,
                       double r0, double rel_tol) {
    if (!(r0 > r)) return 0.0;
    if (std::isinf(r0)) return integrate_right_open(f, r, rel_tol);
    return integrate(f, r, r0, rel_tol);
}

} // namespace fpsub
