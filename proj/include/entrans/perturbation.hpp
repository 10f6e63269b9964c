#pragma once

#include <cstdint>
#include <utility>

#include "entrans/execution.hpp"
#include "entrans/rng.hpp"

namespace entrans {

// Degenerate-pair mixing model at weak coupling: a product eigenstate couples
// to its nearest quasi-degenerate partner with strength ratio
// x = 4 lambda w / s^2 (w: squared coupling element, exponential; s: level
// spacing), giving Schmidt weights (1 +- 1/sqrt(1+x)) / 2.
struct TwoLevelWeights {
    double lambda1 = 1.0;
    double lambda2 = 0.0;
};

TwoLevelWeights two_level_weights(double lambda, double w, double s);

// Monte-Carlo mean of the largest Schmidt weight,
// 1 - E_w[ integral_0^smax (1 - s / sqrt(s^2 + 4 lambda w)) ds ],
// with the spacing integral done by uniform importance sampling on
// [0, s_max]. s_max defaults to 2e6 * lambda, which keeps the truncated tail
// below 1e-6. Returns (mean, standard error).
std::pair<double, double> mc_lambda1_mean(double lambda, long long samples,
                                          const RandomStream& stream, double s_max = 0.0,
                                          ExecPolicy policy = ExecPolicy::Serial);

// Monte-Carlo mean of the second Schmidt weight: expectation of the two-level
// value (1 - s / sqrt(s^2 + 4 lambda w)) / 2 under w ~ Exp(1) and the
// min-spacing density s ~ Exp(2).
std::pair<double, double> mc_lambda2_mean(double lambda, long long samples,
                                          const RandomStream& stream,
                                          ExecPolicy policy = ExecPolicy::Serial);

// One draw of the rescaled second weight u = sqrt(lambda / lambda_2) in the
// perturbative regime; reduces to s / sqrt(w), independent of lambda.
// Consumes exactly two stream draws.
double sample_u(double lambda, RandomStream& stream);

} // namespace entrans
