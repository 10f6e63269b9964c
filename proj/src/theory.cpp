#include "entrans/theory.hpp"

#include <cmath>
#include <numbers>

#include "entrans/errors.hpp"
#include "entrans/quadrature.hpp"

namespace entrans::theory {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

void require_order(int k, int min_k, const char* where)
{
    if (k < min_k)
        throw config_error(std::string(where) + ": order must be >= " + std::to_string(min_k));
}

void require_dim(int n, const char* where)
{
    if (n < 2)
        throw config_error(std::string(where) + ": dimension must be >= 2");
}

void require_lambda(double lambda, const char* where)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw config_error(std::string(where) + ": lambda must be finite and >= 0");
}

} // namespace

double alpha(int k)
{
    require_order(k, 1, "alpha");
    return kPi * std::exp(std::lgamma(k - 0.5) - std::lgamma(k));
}

double catalan_number(int k)
{
    require_order(k, 1, "catalan_number");
    if (k > 30)
        throw config_error("catalan_number: k > 30 is not exactly representable");
    // The recurrence c_{j+1} = c_j * 2 (2j+1) / (j+2) divides exactly at each
    // step, so integer arithmetic keeps every value exact.
    unsigned long long c = 1;  // C_1
    for (unsigned long long j = 1; j < static_cast<unsigned long long>(k); ++j)
        c = c * 2 * (2 * j + 1) / (j + 2);
    return static_cast<double>(c);
}

double asymptotic_moment(int k, int n)
{
    require_order(k, 1, "asymptotic_moment");
    require_dim(n, "asymptotic_moment");
    return catalan_number(k) * std::pow(static_cast<double>(n), 1 - k);
}

double asymptotic_entropy(int k, int n)
{
    require_order(k, 1, "asymptotic_entropy");
    require_dim(n, "asymptotic_entropy");
    if (k == 1)
        return std::log(static_cast<double>(n)) - 0.5;
    return (1.0 - asymptotic_moment(k, n)) / (k - 1);
}

double entropy_transition(int k, int n, double lambda)
{
    require_lambda(lambda, "entropy_transition");
    const double s_inf = asymptotic_entropy(k, n);
    return s_inf * (1.0 - std::exp(-alpha(k) * std::sqrt(lambda) / s_inf));
}

OdeCurve integrate_moment_ode(int k, int n, double sqrt_lambda_max, int steps)
{
    require_order(k, 2, "integrate_moment_ode");
    require_dim(n, "integrate_moment_ode");
    if (!(sqrt_lambda_max > 0.0) || steps < 1)
        throw config_error("integrate_moment_ode: need sqrt_lambda_max > 0 and steps >= 1");

    const double p_inf = asymptotic_moment(k, n);
    const double rate = (k - 1) * alpha(k) / (1.0 - p_inf);
    const auto deriv = [&](double p) { return -rate * (p - p_inf); };

    OdeCurve curve;
    curve.sqrt_lambda.reserve(steps + 1);
    curve.moment.reserve(steps + 1);
    curve.entropy.reserve(steps + 1);
    const double h = sqrt_lambda_max / steps;
    double p = 1.0;
    for (int j = 0; j <= steps; ++j) {
        curve.sqrt_lambda.push_back(j * h);
        curve.moment.push_back(p);
        curve.entropy.push_back((1.0 - p) / (k - 1));
        if (j == steps)
            break;
        const double k1 = deriv(p);
        const double k2 = deriv(p + 0.5 * h * k1);
        const double k3 = deriv(p + 0.5 * h * k2);
        const double k4 = deriv(p + h * k3);
        p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return curve;
}

Extrapolated lambda1_mean(double lambda)
{
    require_lambda(lambda, "lambda1_mean");
    // Past lambda ~ 1e-2 the dropped O(lambda log lambda) term reaches a
    // third of the leading deficit, so the value is only an extrapolation.
    return {1.0 - std::sqrt(kPi * lambda), lambda > 1e-2};
}

double lambda2_mean_series(double lambda)
{
    require_lambda(lambda, "lambda2_mean_series");
    if (lambda == 0.0)
        return 0.0;
    return std::sqrt(kPi * lambda) + 2.0 * lambda * (kEulerGamma + std::log(4.0 * lambda)) -
           8.0 * std::sqrt(kPi) * std::pow(lambda, 1.5);
}

double lambda2_mean_quadrature(double lambda)
{
    require_lambda(lambda, "lambda2_mean_quadrature");
    if (lambda == 0.0)
        return 0.0;
    // The spacing weight is exp(-2s), not the normalized min-spacing density
    // 2 exp(-2s): the factor 1/2 of the two-level eigenvalue (1 - 1/sqrt(1+x))/2
    // is already folded in.
    const auto inner = [&](double w) {
        const double c = 4.0 * lambda * w;
        const auto f = [&](double s) {
            return std::exp(-2.0 * s) * (1.0 - s / std::sqrt(s * s + c));
        };
        return integrate_semi_infinite(f, 0.0, 1e-12, 1e-10);
    };
    const auto outer = [&](double w) { return std::exp(-w) * inner(w); };
    return integrate_semi_infinite(outer, 0.0, 1e-10, 1e-8);
}

double moment_small_lambda(int k, double lambda)
{
    require_order(k, 1, "moment_small_lambda");
    require_lambda(lambda, "moment_small_lambda");
    return 1.0 - (k - 1) * alpha(k) * std::sqrt(lambda);
}

double u_density(double u)
{
    if (!(u >= 0.0) || !std::isfinite(u))
        throw config_error("u_density: u must be finite and >= 0");
    const auto f = [&](double t) { return t * t * std::exp(-t * t - 2.0 * u * t); };
    return 4.0 * integrate_semi_infinite(f, 0.0, 1e-12, 1e-10);
}

} // namespace entrans::theory
