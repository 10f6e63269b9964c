#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "entrans/sweep.hpp"

namespace entrans {

// Basis-resolved localization experiment: compare the kicked-rotor rescaled
// IPR ratio r = I_rescaled / (1 + mean purity) against the fluctuation band
// of the random ensemble, per transition-parameter value. The random
// ensemble is ergodic in any product basis, so r fluctuates about 1; a
// basis tied to the rotor dynamics can leave the band where eigenstates
// localize.
struct IprRatioPoint {
    double lambda = 0.0;
    double rmt_ratio_mean = 0.0;
    double rmt_ratio_sigma = 0.0;  // realization-to-realization scatter
    double kr_ratio_position = 0.0;
    double kr_ratio_momentum = 0.0;
    bool position_within_band = true;  // |r - 1| <= 3 sigma
    bool momentum_within_band = true;
};

struct IprRatioResult {
    SweepConfig rmt_config, kr_config;
    std::vector<IprRatioPoint> points;
};

// Combine two completed sweeps over the same lambda grid. The rmt sweep must
// have >= 2 realizations (the band needs scatter); the kicked-rotor sweep
// must include the momentum basis.
IprRatioResult combine_ipr_ratio(const SweepResult& rmt, const SweepResult& kr);

struct IprRatioConfig {
    int n = 50;
    std::vector<double> lambda_grid;  // empty = default grid
    int rmt_realizations = 20;
    int kr_realizations = 1;
    std::uint64_t master_seed = 42;
    int threads = 0;
};

// Drive both sweeps and combine them.
IprRatioResult run_ipr_ratio(const IprRatioConfig& config);

void to_json(nlohmann::json& j, const IprRatioConfig& config);
void from_json(const nlohmann::json& j, IprRatioConfig& config);

} // namespace entrans
