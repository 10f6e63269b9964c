#include "entrans/sweep.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include <omp.h>

#include "entrans/errors.hpp"
#include "entrans/kernels.hpp"
#include "entrans/stats.hpp"
#include "entrans/theory.hpp"

namespace entrans {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Validity edge of the weak-coupling Schmidt-weight expansions; theory
// columns hold NaN beyond it.
constexpr double kPerturbativeLimit = 1e-2;

struct TaskOutcome {
    bool ok = false;
    std::string error;
    std::map<std::string, double> means;     // spectral means per measure key
    std::map<std::string, double> state_sd;  // state-level standard deviations
};

// Entropy orders actually measured: the requested set plus 2, which the
// rescaled-IPR ratio always needs.
std::vector<int> measured_k_set(const std::vector<int>& k_set)
{
    std::set<int> ks(k_set.begin(), k_set.end());
    ks.insert(2);
    return {ks.begin(), ks.end()};
}

// Boundary phase clear of the parity-symmetric values 0 and 1/2:
// uniform on [0.05, 0.45) u [0.55, 0.95).
double generic_phase(RandomStream& stream)
{
    const double t = 0.8 * stream.uniform01();
    return t < 0.4 ? 0.05 + t : 0.15 + t;
}

std::vector<std::string> basis_labels(const SweepConfig& config)
{
    std::vector<std::string> labels{"computational"};
    if (config.momentum_basis)
        labels.push_back("momentum");
    return labels;
}

// Output keys in a fixed order (also the CSV row order per grid point).
std::vector<std::string> requested_keys(const SweepConfig& config)
{
    std::vector<std::string> keys;
    for (const int k : config.k_set)
        keys.push_back("S" + std::to_string(k));
    for (const int k : config.k_set)
        if (k >= 2)
            keys.push_back("P" + std::to_string(k));
    keys.emplace_back("lambda1");
    keys.emplace_back("lambda2");
    for (const auto& label : basis_labels(config)) {
        keys.push_back("ipr:" + label);
        keys.push_back("ipr_rescaled:" + label);
        keys.push_back("ratio:" + label);
    }
    return keys;
}

double theory_for_key(const std::string& key, int n, double lambda)
{
    if (key.starts_with("S"))
        return theory::entropy_transition(std::stoi(key.substr(1)), n, lambda);
    if (key.starts_with("P")) {
        const int k = std::stoi(key.substr(1));
        return 1.0 - (k - 1) * theory::entropy_transition(k, n, lambda);
    }
    if (key == "lambda1")
        return lambda <= kPerturbativeLimit ? theory::lambda1_mean(lambda).value : kNaN;
    if (key == "lambda2")
        return lambda <= kPerturbativeLimit ? theory::lambda2_mean_series(lambda) : kNaN;
    const double p2 = 1.0 - theory::entropy_transition(2, n, lambda);
    if (key.starts_with("ipr_rescaled:"))
        return 1.0 + p2;
    if (key.starts_with("ipr:"))
        return purity_to_ipr(p2, n);
    if (key.starts_with("ratio:"))
        return 1.0;
    return kNaN;
}

void accumulate(TaskOutcome& out, const std::string& key, const std::vector<double>& values)
{
    const auto [mean, se] = mean_and_stderr(values);
    out.means[key] = mean;
    // mean_and_stderr returns sd/sqrt(count); store the plain sd.
    out.state_sd[key] = se * std::sqrt(static_cast<double>(values.size()));
}

TaskOutcome run_task(const SweepConfig& config, double lambda, std::uint64_t stream_index,
                     bool fresh_phases)
{
    TaskOutcome out;
    try {
        ModelSpec spec = config.model;
        spec.kind = config.model.kind;
        spec.coupling = coupling_for_lambda(spec.kind, spec.n, lambda);
        spec.master_seed = config.master_seed;
        spec.stream_index = stream_index;
        RandomStream stream(config.master_seed, stream_index);

        FloquetOperator op;
        if (spec.kind == ModelKind::Rmt) {
            op = build_rmt_floquet(spec, stream);
        } else {
            if (fresh_phases)
                for (auto& phases : spec.boundary_phases) {
                    phases.theta_q = generic_phase(stream);
                    phases.theta_p = generic_phase(stream);
                }
            op = build_kr_floquet(spec);
        }

        const int n = spec.n;
        EigenstateSet eigen = eigendecompose_unitary(op.full);
        op.full.resize(0, 0);  // large and no longer needed

        std::vector<IprBasis> bases{IprBasis::computational()};
        if (config.momentum_basis)
            bases.push_back(IprBasis::product(
                "momentum", kr_momentum_transform(n, spec.boundary_phases[0]).adjoint(),
                kr_momentum_transform(n, spec.boundary_phases[1]).adjoint()));

        const std::vector<int> ks = measured_k_set(config.k_set);
        const std::vector<MeasureRecord> records =
            measure_states(eigen.vectors, n, ks, bases, ExecPolicy::Serial);

        const std::size_t count = records.size();
        std::vector<double> values(count);
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            for (std::size_t j = 0; j < count; ++j)
                values[j] = records[j].entropies[ki];
            accumulate(out, "S" + std::to_string(ks[ki]), values);
            if (ks[ki] >= 2) {
                for (std::size_t j = 0; j < count; ++j)
                    values[j] = records[j].moments[ki];
                accumulate(out, "P" + std::to_string(ks[ki]), values);
            }
        }
        for (std::size_t j = 0; j < count; ++j)
            values[j] = records[j].lambda1;
        accumulate(out, "lambda1", values);
        for (std::size_t j = 0; j < count; ++j)
            values[j] = records[j].lambda2;
        accumulate(out, "lambda2", values);
        for (std::size_t bi = 0; bi < bases.size(); ++bi) {
            for (std::size_t j = 0; j < count; ++j)
                values[j] = records[j].iprs[bi];
            accumulate(out, "ipr:" + bases[bi].label, values);
        }

        const double purity_term = 1.0 + out.means.at("P2");
        for (const auto& basis : bases) {
            const std::string src = "ipr:" + basis.label;
            const std::string rs = "ipr_rescaled:" + basis.label;
            out.means[rs] = rescaled_ipr(out.means.at(src), n);
            out.state_sd[rs] = rescaled_ipr(out.state_sd.at(src), n);
            // Ratio of spectral means; a realization-level quantity with no
            // state-level scatter of its own.
            out.means["ratio:" + basis.label] = out.means.at(rs) / purity_term;
        }
        out.ok = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

} // namespace

int SweepConfig::effective_realizations() const
{
    if (realizations > 0)
        return realizations;
    return model.kind == ModelKind::Rmt ? 20 : 1;
}

void SweepConfig::validate() const
{
    ModelSpec probe = model;
    probe.coupling = 0.0;  // template coupling is ignored; grid points set it
    probe.validate();
    if (lambda_grid.empty())
        throw config_error("sweep: lambda grid is empty");
    std::string bad;
    for (const double lambda : lambda_grid) {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw config_error("sweep: lambda grid values must be finite and >= 0");
        try {
            coupling_for_lambda(model.kind, model.n, lambda);
        } catch (const config_error&) {
            bad += (bad.empty() ? "" : ", ") + std::to_string(lambda);
        }
    }
    if (!bad.empty())
        throw config_error("sweep: unattainable lambda values for this model: " + bad);
    if (k_set.empty())
        throw config_error("sweep: k set is empty");
    for (const int k : k_set)
        if (k < 1 || k > 30)
            throw config_error("sweep: entropy orders must lie in [1, 30]");
    if (momentum_basis && model.kind != ModelKind::KickedRotor)
        throw config_error("sweep: momentum basis requires the kicked-rotor model");
    if (realizations < 0)
        throw config_error("sweep: realizations must be >= 0");
    if (threads < 0)
        throw config_error("sweep: threads must be >= 0");
    if (!(abort_limit >= 0.0 && abort_limit <= 1.0))
        throw config_error("sweep: abort limit must lie in [0, 1]");
}

void to_json(nlohmann::json& j, const SweepConfig& config)
{
    j = nlohmann::json{
        {"model", config.model},
        {"lambda_grid", config.lambda_grid},
        {"realizations", config.realizations},
        {"k_set", config.k_set},
        {"momentum_basis", config.momentum_basis},
        {"master_seed", config.master_seed},
        {"threads", config.threads},
        {"abort_limit", config.abort_limit},
    };
}

void from_json(const nlohmann::json& j, SweepConfig& config)
{
    j.at("model").get_to(config.model);
    j.at("lambda_grid").get_to(config.lambda_grid);
    j.at("realizations").get_to(config.realizations);
    j.at("k_set").get_to(config.k_set);
    j.at("momentum_basis").get_to(config.momentum_basis);
    j.at("master_seed").get_to(config.master_seed);
    j.at("threads").get_to(config.threads);
    j.at("abort_limit").get_to(config.abort_limit);
}

std::vector<double> default_lambda_grid()
{
    constexpr int points = 24;
    const double lo = std::log10(1e-4);
    const double hi = std::log10(10.0);
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = std::pow(10.0, lo + (hi - lo) * i / (points - 1));
    return grid;
}

SweepResult run_sweep(const SweepConfig& config)
{
    config.validate();
    const int R = config.effective_realizations();
    const auto& grid = config.lambda_grid;
    const long total = static_cast<long>(grid.size()) * R;
    if (config.threads > 0)
        omp_set_num_threads(config.threads);

    std::vector<TaskOutcome> outcomes(total);
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < total; ++t) {
        const long i = t / R;
        const long r = t % R;
        outcomes[t] = run_task(config, grid[i], static_cast<std::uint64_t>(t), r > 0);
    }

    SweepResult result;
    result.config = config;
    result.key_order = requested_keys(config);
    const int n = config.model.n;
    const long long states = static_cast<long long>(n) * n;
    const std::vector<std::string>& keys = result.key_order;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepPoint point;
        point.lambda = grid[i];
        point.coupling = coupling_for_lambda(config.model.kind, n, grid[i]);

        std::vector<const TaskOutcome*> good;
        for (int r = 0; r < R; ++r) {
            const TaskOutcome& out = outcomes[i * R + r];
            if (out.ok) {
                good.push_back(&out);
            } else {
                ++result.failed_realizations;
                result.failures.push_back("lambda=" + std::to_string(grid[i]) +
                                          " realization=" + std::to_string(r) + ": " +
                                          out.error);
            }
        }

        for (const auto& key : keys) {
            MeasureStat stat;
            stat.theory = theory_for_key(key, n, grid[i]);
            for (const TaskOutcome* out : good)
                stat.per_realization.push_back(out->means.at(key));
            if (!stat.per_realization.empty()) {
                const auto [mean, se] = mean_and_stderr(stat.per_realization);
                stat.mean = mean;
                if (stat.per_realization.size() >= 2) {
                    stat.stderr_of_mean = se;
                } else {
                    const auto it = good.front()->state_sd.find(key);
                    stat.stderr_of_mean =
                        it != good.front()->state_sd.end()
                            ? it->second / std::sqrt(static_cast<double>(states))
                            : 0.0;
                }
            }
            stat.n_samples = static_cast<long long>(good.size()) * states;
            point.measures.emplace(key, std::move(stat));
        }
        result.points.push_back(std::move(point));
    }

    if (total > 0 &&
        static_cast<double>(result.failed_realizations) / static_cast<double>(total) >
            config.abort_limit) {
        std::string detail;
        for (const auto& f : result.failures) {
            detail += "\n  " + f;
            if (detail.size() > 2000)
                break;
        }
        throw numerical_error("sweep aborted: " + std::to_string(result.failed_realizations) +
                              " of " + std::to_string(total) + " realizations failed" + detail);
    }
    return result;
}

} // namespace entrans
