#pragma once

#include <functional>

namespace fpsub {

// Adaptive Gauss-Kronrod (G7,K15) integration. rel_tol applies to the
// accumulated estimate; throws std::runtime_error on non-finite integrand
// values or failure to converge.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

// Integral over (a, +inf) via the substitution x = a + t/(1-t).
double integrate_right_open(const std::function<double(double)>& f, double a,
                            double rel_tol = 1e-10);

// Integral over (0, r] of g(x) * x^{-alpha-1} dx where g(x) = O(x) near 0,
// computed after the substitution x = r e^{-z} which removes the power
// singularity at the origin. r may be finite only.
double integrate_singular_lower(const std::function<double(double)>& g,
                                double alpha, double r, double rel_tol = 1e-10);

// Integral over (r, r0) of g, where r0 may be +inf.
double integrate_upper(const std::function<double(double)>& f, double r,
                       double r0, double rel_tol = 1e-10);

} // namespace fpsub
