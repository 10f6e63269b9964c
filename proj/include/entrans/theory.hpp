#pragma once

#include <vector>

namespace entrans::theory {

// Order-dependent slope constant pi * Gamma(k - 1/2) / Gamma(k) of the
// entanglement growth at weak coupling; alpha(1) = pi^(3/2).
double alpha(int k);

// k-th Catalan number as a double (exact for k <= 30): the saturation value
// of the k-th spectral moment is catalan_number(k) * n^(1 - k).
double catalan_number(int k);

double asymptotic_moment(int k, int n);

// Saturation entropy of chaotic eigenstates: (1 - catalan_k n^(1-k))/(k - 1)
// for k >= 2, log n - 1/2 for k = 1.
double asymptotic_entropy(int k, int n);

// Universal entropy curve: S_inf (1 - exp(-alpha(k) sqrt(lambda) / S_inf)).
double entropy_transition(int k, int n, double lambda);

// Fixed-step RK4 integration of the closed moment-relaxation ODE
// dP/dx = -(k-1) alpha(k) (P - P_inf) / (1 - P_inf), x = sqrt(lambda),
// from P(0) = 1; nodes at x = j * sqrt_lambda_max / steps.
struct OdeCurve {
    std::vector<double> sqrt_lambda;
    std::vector<double> moment;
    std::vector<double> entropy;
};
OdeCurve integrate_moment_ode(int k, int n, double sqrt_lambda_max, int steps);

// Leading-order mean of the largest Schmidt weight, 1 - sqrt(pi lambda).
// Past the expansion's validity range the value is still returned but
// flagged as an extrapolation.
struct Extrapolated {
    double value = 0.0;
    bool extrapolated = false;
};
Extrapolated lambda1_mean(double lambda);

// Mean of the second Schmidt weight: logarithmic series in lambda, and the
// regularized double-integral form evaluated by quadrature.
double lambda2_mean_series(double lambda);
double lambda2_mean_quadrature(double lambda);

// Weak-coupling moment expansion 1 - (k-1) alpha(k) sqrt(lambda).
double moment_small_lambda(int k, double lambda);

// Universal density of the rescaled second Schmidt weight
// u = sqrt(lambda / lambda_2): 4 integral t^2 exp(-t^2 - 2 u t) dt,
// evaluated by quadrature (density at 0 is sqrt(pi)).
double u_density(double u);

} // namespace entrans::theory
