#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrans/models.hpp"
#include "entrans/rng.hpp"
#include "entrans/stats.hpp"

namespace entrans {

// Distribution of the rescaled second Schmidt weight u = sqrt(lambda /
// lambda_2) across eigenstates, deep in the weak-coupling regime. Samples
// from several small lambda values are pooled after a cross-consistency
// check, since the rescaled density is predicted to be lambda-independent.
struct UDistConfig {
    ModelSpec model;
    std::vector<double> lambda_values{1e-5, 1e-4, 1e-3};
    int realizations = 0;  // 0 = model default (rmt 20, kr 8 boundary-phase draws)
    int bins = 60;
    double u_max = 4.0;
    std::uint64_t master_seed = 42;
    int threads = 0;
    double abort_limit = 0.01;

    int effective_realizations() const;
    void validate() const;
};

void to_json(nlohmann::json& j, const UDistConfig& config);
void from_json(const nlohmann::json& j, UDistConfig& config);

struct UDistResult {
    UDistConfig config;
    Histogram pooled;                      // all lambda values and realizations
    std::vector<Histogram> per_lambda;     // aligned with config.lambda_values
    std::vector<double> cell_probabilities;  // bins + overflow cell, empirical
    std::vector<double> theory_cell_mass;    // same cells from the universal density
    double tv_to_theory = 0.0;
    std::vector<double> pairwise_pvalues;  // two-sample chi2 between lambda values
    long long total_samples = 0;
    int failed_realizations = 0;
    std::vector<std::string> failures;
};

UDistResult run_udist(const UDistConfig& config);

// Histogram of the perturbative reference sampler over the same cells.
Histogram sample_u_histogram(double lambda, long long samples, const RandomStream& stream,
                             int bins, double u_max);

// Total variation distance between the cell distributions of two histograms
// over identical cells (bins + overflow).
double tv_between(const Histogram& a, const Histogram& b);

// Probability mass of the universal density in each cell (bins + overflow).
std::vector<double> u_density_cell_mass(int bins, double u_max);

} // namespace entrans
