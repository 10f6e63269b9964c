#include "entrans/udist.hpp"

#include <cmath>

#include <omp.h>

#include "entrans/errors.hpp"
#include "entrans/kernels.hpp"
#include "entrans/perturbation.hpp"
#include "entrans/quadrature.hpp"
#include "entrans/spectral.hpp"
#include "entrans/theory.hpp"

namespace entrans {

namespace {

struct TaskOutcome {
    bool ok = false;
    std::string error;
    std::vector<double> u_values;
};

double generic_phase(RandomStream& stream)
{
    const double t = 0.8 * stream.uniform01();
    return t < 0.4 ? 0.05 + t : 0.15 + t;
}

TaskOutcome run_task(const UDistConfig& config, double lambda, std::uint64_t stream_index,
                     bool fresh_phases)
{
    TaskOutcome out;
    try {
        ModelSpec spec = config.model;
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

        EigenstateSet eigen = eigendecompose_unitary(op.full);
        op.full.resize(0, 0);
        const std::vector<SchmidtSpectrum> spectra =
            schmidt_batch(eigen.vectors, spec.n, ExecPolicy::Serial);
        out.u_values.reserve(spectra.size());
        for (const auto& spectrum : spectra)
            out.u_values.push_back(std::sqrt(lambda / spectrum.weights(1)));
        out.ok = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

} // namespace

int UDistConfig::effective_realizations() const
{
    if (realizations > 0)
        return realizations;
    return model.kind == ModelKind::Rmt ? 20 : 8;
}

void UDistConfig::validate() const
{
    ModelSpec probe = model;
    probe.coupling = 0.0;
    probe.validate();
    if (lambda_values.empty())
        throw config_error("udist: no lambda values");
    for (const double lambda : lambda_values) {
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw config_error("udist: lambda values must be finite and > 0");
        coupling_for_lambda(model.kind, model.n, lambda);
    }
    if (bins < 2)
        throw config_error("udist: need at least 2 bins");
    if (!(u_max > 0.0))
        throw config_error("udist: u_max must be positive");
    if (realizations < 0 || threads < 0)
        throw config_error("udist: realizations and threads must be >= 0");
    if (!(abort_limit >= 0.0 && abort_limit <= 1.0))
        throw config_error("udist: abort limit must lie in [0, 1]");
}

void to_json(nlohmann::json& j, const UDistConfig& config)
{
    j = nlohmann::json{
        {"model", config.model},
        {"lambda_values", config.lambda_values},
        {"realizations", config.realizations},
        {"bins", config.bins},
        {"u_max", config.u_max},
        {"master_seed", config.master_seed},
        {"threads", config.threads},
        {"abort_limit", config.abort_limit},
    };
}

void from_json(const nlohmann::json& j, UDistConfig& config)
{
    j.at("model").get_to(config.model);
    j.at("lambda_values").get_to(config.lambda_values);
    j.at("realizations").get_to(config.realizations);
    j.at("bins").get_to(config.bins);
    j.at("u_max").get_to(config.u_max);
    j.at("master_seed").get_to(config.master_seed);
    j.at("threads").get_to(config.threads);
    j.at("abort_limit").get_to(config.abort_limit);
}

std::vector<double> u_density_cell_mass(int bins, double u_max)
{
    std::vector<double> mass(bins + 1);
    const double width = u_max / bins;
    double covered = 0.0;
    for (int b = 0; b < bins; ++b) {
        mass[b] = integrate_finite([](double u) { return theory::u_density(u); }, b * width,
                                   (b + 1) * width, 1e-9, 1e-8);
        covered += mass[b];
    }
    // The density is normalized, so the overflow cell carries the remainder.
    mass[bins] = std::max(0.0, 1.0 - covered);
    return mass;
}

double tv_between(const Histogram& a, const Histogram& b)
{
    return tv_distance(a.cell_probabilities(), b.cell_probabilities());
}

Histogram sample_u_histogram(double lambda, long long samples, const RandomStream& stream,
                             int bins, double u_max)
{
    if (samples < 1)
        throw config_error("sample_u_histogram: need at least one sample");
    std::vector<double> values(static_cast<std::size_t>(samples));
    const std::uint64_t base = stream.draw_count();
    for (long long i = 0; i < samples; ++i) {
        RandomStream local = stream.at_draw(base + 2 * static_cast<std::uint64_t>(i));
        values[static_cast<std::size_t>(i)] = sample_u(lambda, local);
    }
    return make_histogram(values, bins, 0.0, u_max);
}

UDistResult run_udist(const UDistConfig& config)
{
    config.validate();
    const int R = config.effective_realizations();
    const auto& lambdas = config.lambda_values;
    const long total = static_cast<long>(lambdas.size()) * R;
    if (config.threads > 0)
        omp_set_num_threads(config.threads);

    std::vector<TaskOutcome> outcomes(total);
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < total; ++t) {
        const long i = t / R;
        const long r = t % R;
        outcomes[t] = run_task(config, lambdas[i], static_cast<std::uint64_t>(t), r > 0);
    }

    UDistResult result;
    result.config = config;

    std::vector<double> pooled_values;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        std::vector<double> lambda_values_i;
        for (int r = 0; r < R; ++r) {
            const TaskOutcome& out = outcomes[i * R + r];
            if (out.ok) {
                lambda_values_i.insert(lambda_values_i.end(), out.u_values.begin(),
                                       out.u_values.end());
            } else {
                ++result.failed_realizations;
                result.failures.push_back("lambda=" + std::to_string(lambdas[i]) +
                                          " realization=" + std::to_string(r) + ": " +
                                          out.error);
            }
        }
        if (lambda_values_i.empty())
            throw numerical_error("udist: every realization failed at lambda=" +
                                  std::to_string(lambdas[i]));
        result.per_lambda.push_back(
            make_histogram(lambda_values_i, config.bins, 0.0, config.u_max));
        pooled_values.insert(pooled_values.end(), lambda_values_i.begin(),
                             lambda_values_i.end());
    }

    if (total > 0 &&
        static_cast<double>(result.failed_realizations) / static_cast<double>(total) >
            config.abort_limit)
        throw numerical_error("udist aborted: " + std::to_string(result.failed_realizations) +
                              " of " + std::to_string(total) + " realizations failed");

    result.pooled = make_histogram(pooled_values, config.bins, 0.0, config.u_max);
    result.total_samples = result.pooled.total();
    result.cell_probabilities = result.pooled.cell_probabilities();
    result.theory_cell_mass = u_density_cell_mass(config.bins, config.u_max);
    result.tv_to_theory = tv_distance(result.cell_probabilities, result.theory_cell_mass);

    // Cross-checks that the rescaled distribution really is lambda-free:
    // two-sample tests between consecutive lambda values (overflow included).
    for (std::size_t i = 0; i + 1 < result.per_lambda.size(); ++i) {
        std::vector<long long> a = result.per_lambda[i].counts;
        a.push_back(result.per_lambda[i].overflow);
        std::vector<long long> b = result.per_lambda[i + 1].counts;
        b.push_back(result.per_lambda[i + 1].overflow);
        result.pairwise_pvalues.push_back(chi2_two_sample_pvalue(a, b));
    }
    return result;
}

} // namespace entrans
