#pragma once

#include <functional>

namespace entrans {

// Adaptive Gauss-Kronrod integration (GSL) with callable integrands.
// Throws numerical_error if the requested tolerance cannot be met.

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, double rel_tol = 1e-10);

// Integral over [lower, infinity).
double integrate_semi_infinite(const std::function<double(double)>& f, double lower,
                               double abs_tol = 1e-10, double rel_tol = 1e-10);

} // namespace entrans
