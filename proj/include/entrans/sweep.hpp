#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrans/models.hpp"

namespace entrans {

// One transition-parameter sweep: for each lambda on the grid, build
// `realizations` Floquet operators, eigendecompose them completely, and
// aggregate eigenstate measures. The random-ensemble model draws fresh
// subsystem unitaries per realization; the kicked-rotor model is
// deterministic, so realizations beyond the first draw fresh generic
// boundary phases instead.
struct SweepConfig {
    ModelSpec model;                  // template; coupling is derived per grid point
    std::vector<double> lambda_grid;  // transition-parameter values, >= 0
    int realizations = 0;             // 0 = model default (rmt 20, kr 1)
    std::vector<int> k_set{1, 2, 3, 4};
    bool momentum_basis = false;      // additionally measure momentum-product IPRs
    std::uint64_t master_seed = 42;
    int threads = 0;                  // 0 = OpenMP default
    double abort_limit = 0.01;        // tolerated fraction of failed realizations

    int effective_realizations() const;
    void validate() const;
};

void to_json(nlohmann::json& j, const SweepConfig& config);
void from_json(const nlohmann::json& j, SweepConfig& config);

// 24 log-spaced transition-parameter values on [1e-4, 10].
std::vector<double> default_lambda_grid();

// Aggregate of one measure at one grid point. `per_realization` holds the
// spectral (eigenstate-averaged) mean of each realization, in realization
// order; the point mean averages those. The standard error comes from the
// realization-to-realization scatter, or from the state-level scatter when
// only one realization exists.
struct MeasureStat {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    double theory = 0.0;  // NaN when no prediction applies
    long long n_samples = 0;
    std::vector<double> per_realization;
};

struct SweepPoint {
    double lambda = 0.0;
    double coupling = 0.0;
    std::map<std::string, MeasureStat> measures;
};

struct SweepResult {
    SweepConfig config;
    std::vector<std::string> key_order;  // measure keys in presentation order
    std::vector<SweepPoint> points;
    int failed_realizations = 0;
    std::vector<std::string> failures;
};

// Measure keys produced per point: "S<k>" (entropies), "P<k>" (moments,
// k >= 2), "lambda1", "lambda2", and per basis label "ipr:<basis>",
// "ipr_rescaled:<basis>", "ratio:<basis>" (rescaled IPR over 1 + mean
// purity). Throws config_error for invalid configs (including grid points
// whose coupling is unattainable) and numerical_error if more than
// `abort_limit` of the realizations fail.
SweepResult run_sweep(const SweepConfig& config);

} // namespace entrans
