#include "entrans/ipr_ratio.hpp"

#include <cmath>

#include "entrans/errors.hpp"
#include "entrans/stats.hpp"

namespace entrans {

IprRatioResult combine_ipr_ratio(const SweepResult& rmt, const SweepResult& kr)
{
    if (rmt.config.model.kind != ModelKind::Rmt || kr.config.model.kind != ModelKind::KickedRotor)
        throw config_error("combine_ipr_ratio: expected an rmt sweep and a kicked-rotor sweep");
    if (!kr.config.momentum_basis)
        throw config_error("combine_ipr_ratio: kicked-rotor sweep lacks the momentum basis");
    if (rmt.points.size() != kr.points.size())
        throw config_error("combine_ipr_ratio: sweeps cover different grids");

    IprRatioResult result;
    result.rmt_config = rmt.config;
    result.kr_config = kr.config;
    for (std::size_t i = 0; i < rmt.points.size(); ++i) {
        const SweepPoint& rp = rmt.points[i];
        const SweepPoint& kp = kr.points[i];
        if (std::abs(rp.lambda - kp.lambda) > 1e-12 * std::max(1.0, rp.lambda))
            throw config_error("combine_ipr_ratio: lambda grids differ at index " +
                               std::to_string(i));

        const MeasureStat& rmt_ratio = rp.measures.at("ratio:computational");
        if (rmt_ratio.per_realization.size() < 2)
            throw config_error("combine_ipr_ratio: rmt sweep needs >= 2 realizations per "
                               "point to define a fluctuation band");

        IprRatioPoint point;
        point.lambda = rp.lambda;
        const auto [mean, se] = mean_and_stderr(rmt_ratio.per_realization);
        point.rmt_ratio_mean = mean;
        point.rmt_ratio_sigma =
            se * std::sqrt(static_cast<double>(rmt_ratio.per_realization.size()));
        point.kr_ratio_position = kp.measures.at("ratio:computational").mean;
        point.kr_ratio_momentum = kp.measures.at("ratio:momentum").mean;
        const double band = 3.0 * point.rmt_ratio_sigma;
        point.position_within_band = std::abs(point.kr_ratio_position - 1.0) <= band;
        point.momentum_within_band = std::abs(point.kr_ratio_momentum - 1.0) <= band;
        result.points.push_back(point);
    }
    return result;
}

IprRatioResult run_ipr_ratio(const IprRatioConfig& config)
{
    if (config.rmt_realizations < 2)
        throw config_error("ipr_ratio: rmt realizations must be >= 2");
    if (config.kr_realizations < 1)
        throw config_error("ipr_ratio: kicked-rotor realizations must be >= 1");

    SweepConfig rmt;
    rmt.model.kind = ModelKind::Rmt;
    rmt.model.n = config.n;
    rmt.lambda_grid = config.lambda_grid.empty() ? default_lambda_grid() : config.lambda_grid;
    rmt.realizations = config.rmt_realizations;
    rmt.k_set = {2};
    rmt.master_seed = config.master_seed;
    rmt.threads = config.threads;

    SweepConfig kr;
    kr.model.kind = ModelKind::KickedRotor;  // kick strengths, phases at defaults
    kr.model.n = config.n;
    kr.lambda_grid = rmt.lambda_grid;
    kr.realizations = config.kr_realizations;
    kr.k_set = {2};
    kr.momentum_basis = true;
    kr.threads = config.threads;
    // Decorrelate the two sweeps' streams.
    kr.master_seed = config.master_seed + 1;

    return combine_ipr_ratio(run_sweep(rmt), run_sweep(kr));
}

void to_json(nlohmann::json& j, const IprRatioConfig& config)
{
    j = nlohmann::json{
        {"n", config.n},
        {"lambda_grid", config.lambda_grid},
        {"rmt_realizations", config.rmt_realizations},
        {"kr_realizations", config.kr_realizations},
        {"master_seed", config.master_seed},
        {"threads", config.threads},
    };
}

void from_json(const nlohmann::json& j, IprRatioConfig& config)
{
    j.at("n").get_to(config.n);
    j.at("lambda_grid").get_to(config.lambda_grid);
    j.at("rmt_realizations").get_to(config.rmt_realizations);
    j.at("kr_realizations").get_to(config.kr_realizations);
    j.at("master_seed").get_to(config.master_seed);
    j.at("threads").get_to(config.threads);
}

} // namespace entrans
