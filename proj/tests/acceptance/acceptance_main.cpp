// Acceptance suite for the coupled-chaotic-pair laboratory.
//
// Each criterion prints exactly one "[PASS]"/"[FAIL]" line on stdout and the
// binary exits 0 only if every selected criterion passed. The heavy inputs
// (N = 50 ensemble sweeps and u-distribution runs) are cached as JSON
// manifests under --data, keyed by their full configuration, so criteria can
// share pipelines and interrupted runs resume where they left off.
//
//   acceptance_tests [--data DIR] [--list] [c1 c2 ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrans/errors.hpp"
#include "entrans/haar.hpp"
#include "entrans/io.hpp"
#include "entrans/ipr_ratio.hpp"
#include "entrans/kernels.hpp"
#include "entrans/measures.hpp"
#include "entrans/models.hpp"
#include "entrans/perturbation.hpp"
#include "entrans/rng.hpp"
#include "entrans/spectral.hpp"
#include "entrans/stats.hpp"
#include "entrans/sweep.hpp"
#include "entrans/theory.hpp"
#include "entrans/udist.hpp"

namespace {

using namespace entrans;
namespace fs = std::filesystem;

std::string fmt(const char* format, ...)
{
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------------------
// Manifest cache
// ---------------------------------------------------------------------------

class PipelineCache {
public:
    explicit PipelineCache(fs::path dir) : dir_(std::move(dir)) {}

    nlohmann::json get(const std::string& name, const nlohmann::json& config,
                       const std::function<nlohmann::json()>& compute)
    {
        const fs::path path = dir_ / (name + "-" + config_hash(config) + ".json");
        if (fs::exists(path)) {
            try {
                nlohmann::json envelope = read_json_file(path);
                if (envelope.at("config") == config) {
                    std::cerr << "[data] " << name << ": reusing " << path.string() << "\n";
                    return std::move(envelope.at("result"));
                }
            } catch (const std::exception& e) {
                std::cerr << "[data] " << name << ": discarding unreadable cache ("
                          << e.what() << ")\n";
            }
        }
        std::cerr << "[data] " << name << ": computing..." << std::endl;
        const auto start = std::chrono::steady_clock::now();
        nlohmann::json result = compute();
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_json_file(path, nlohmann::json{{"config", config}, {"result", result}});
        std::cerr << "[data] " << name << ": done in " << fmt("%.1f", seconds) << " s -> "
                  << path.string() << std::endl;
        return result;
    }

private:
    static std::string config_hash(const nlohmann::json& config)
    {
        return fmt("%016zx", std::hash<std::string>{}(config.dump()));
    }

    fs::path dir_;
};

// ---------------------------------------------------------------------------
// Shared pipelines
// ---------------------------------------------------------------------------

struct Pipelines {
    explicit Pipelines(PipelineCache& cache) : cache_(cache) {}

    // 24-point coupling grid, 20 random-ensemble realizations: the entropy
    // transition, its saturation, and the fluctuation band of the IPR ratio.
    const SweepResult& rmt_main()
    {
        if (!rmt_main_) {
            SweepConfig config;
            config.model.kind = ModelKind::Rmt;
            config.model.n = 50;
            config.lambda_grid = default_lambda_grid();
            config.realizations = 20;
            config.k_set = {1, 2, 3, 4};
            config.master_seed = 42;
            rmt_main_ = run_cached_sweep("sweep-rmt-main", config);
        }
        return *rmt_main_;
    }

    // Same grid for the deterministic rotor pair (spectral average only),
    // with position- and momentum-product IPRs.
    const SweepResult& kr_main()
    {
        if (!kr_main_) {
            SweepConfig config;
            config.model.kind = ModelKind::KickedRotor;
            config.model.n = 50;
            config.lambda_grid = default_lambda_grid();
            config.realizations = 1;
            config.k_set = {1, 2, 3, 4};
            config.momentum_basis = true;
            config.master_seed = 43;
            kr_main_ = run_cached_sweep("sweep-kr-main", config);
        }
        return *kr_main_;
    }

    // Perturbative corner for the largest-Schmidt-weight law.
    const SweepResult& rmt_perturbative()
    {
        if (!rmt_perturbative_) {
            SweepConfig config;
            config.model.kind = ModelKind::Rmt;
            config.model.n = 50;
            config.lambda_grid = {1e-5, 1e-4, 1e-3};
            config.realizations = 20;
            config.k_set = {1, 2};
            config.master_seed = 142;
            rmt_perturbative_ = run_cached_sweep("sweep-rmt-perturbative", config);
        }
        return *rmt_perturbative_;
    }

    const UDistResult& udist_rmt()
    {
        if (!udist_rmt_) {
            UDistConfig config;
            config.model.kind = ModelKind::Rmt;
            config.model.n = 50;
            config.lambda_values = {1e-5, 1e-4, 1e-3};
            config.realizations = 20;
            config.master_seed = 44;
            udist_rmt_ = run_cached_udist("udist-rmt", config);
        }
        return *udist_rmt_;
    }

    const UDistResult& udist_kr()
    {
        if (!udist_kr_) {
            UDistConfig config;
            config.model.kind = ModelKind::KickedRotor;
            config.model.n = 50;
            config.lambda_values = {1e-5, 1e-4, 1e-3};
            config.realizations = 8;
            config.master_seed = 45;
            udist_kr_ = run_cached_udist("udist-kr", config);
        }
        return *udist_kr_;
    }

    // Compute every pipeline, cheapest first, so a cold run shows progress
    // early and an interrupted run loses as little as possible.
    void prefetch()
    {
        (void)kr_main();
        (void)udist_kr();
        (void)rmt_perturbative();
        (void)udist_rmt();
        (void)rmt_main();
    }

private:
    SweepResult run_cached_sweep(const std::string& name, const SweepConfig& config)
    {
        const nlohmann::json tag = config;
        return sweep_from_json(
            cache_.get(name, tag, [&] { return sweep_to_json(run_sweep(config)); }));
    }

    UDistResult run_cached_udist(const std::string& name, const UDistConfig& config)
    {
        const nlohmann::json tag = config;
        return udist_from_json(
            cache_.get(name, tag, [&] { return udist_to_json(run_udist(config)); }));
    }

    PipelineCache& cache_;
    std::optional<SweepResult> rmt_main_, kr_main_, rmt_perturbative_;
    std::optional<UDistResult> udist_rmt_, udist_kr_;
};

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Entropy means vs the closed transition curve: relative band above
// lambda = 1e-3, absolute band (in units of the saturation entropy) below.
Outcome entropy_band_check(const SweepResult& result, double rel_limit, double abs_limit_frac)
{
    double worst_rel = 0.0, worst_abs = 0.0, worst_rel_lambda = 0.0;
    int worst_rel_k = 0;
    bool pass = true;
    for (const SweepPoint& point : result.points) {
        for (const int k : result.config.k_set) {
            const MeasureStat& stat = point.measures.at("S" + std::to_string(k));
            const double s_inf = theory::asymptotic_entropy(k, result.config.model.n);
            if (point.lambda >= 1e-3 - 1e-12) {
                const double rel = std::abs(stat.mean - stat.theory) / stat.theory;
                if (rel > worst_rel) {
                    worst_rel = rel;
                    worst_rel_k = k;
                    worst_rel_lambda = point.lambda;
                }
                pass = pass && rel <= rel_limit;
            } else {
                const double abs_frac = std::abs(stat.mean - stat.theory) / s_inf;
                worst_abs = std::max(worst_abs, abs_frac);
                pass = pass && abs_frac <= abs_limit_frac;
            }
        }
    }
    Outcome out;
    out.pass = pass;
    out.detail = fmt("worst rel dev %.2f%% (limit %.0f%%, S%d at lambda=%.3g); "
                     "worst small-lambda dev %.4f of saturation (limit %.4f)",
                     100.0 * worst_rel, 100.0 * rel_limit, worst_rel_k, worst_rel_lambda,
                     worst_abs, abs_limit_frac);
    return out;
}

Outcome c1_entropy_transition(Pipelines& data)
{
    return entropy_band_check(data.rmt_main(), 0.07, 0.01);
}

Outcome c2_rotor_universality(Pipelines& data)
{
    // Same bands as the random ensemble, widened 7% -> 10% (single
    // deterministic realization, 2500-state spectral average only); the
    // small-coupling absolute band widens by the same 10/7 factor.
    return entropy_band_check(data.kr_main(), 0.10, 0.01 * 10.0 / 7.0);
}

Outcome c3_saturation(Pipelines& data)
{
    const SweepResult& result = data.rmt_main();
    const SweepPoint* at10 = nullptr;
    for (const SweepPoint& point : result.points)
        if (std::abs(point.lambda - 10.0) < 1e-9)
            at10 = &point;
    if (at10 == nullptr)
        return {false, "coupling grid lacks the lambda = 10 point"};

    const struct {
        int k;
        double target;
    } targets[] = {{2, 1.0 - 2.0 / 50.0},
                   {3, (1.0 - 5.0 / 2500.0) / 2.0},
                   {4, (1.0 - 14.0 / 125000.0) / 3.0}};
    bool pass = true;
    std::string detail;
    for (const auto& [k, target] : targets) {
        const double mean = at10->measures.at("S" + std::to_string(k)).mean;
        const double rel = std::abs(mean - target) / target;
        pass = pass && rel <= 0.02;
        detail += fmt("%sS%d %.4f vs %.4f (%.2f%%)", detail.empty() ? "" : ", ", k, mean,
                      target, 100.0 * rel);
    }
    return {pass, detail + "; limit 2%"};
}

Outcome c4_largest_weight_law(Pipelines& data)
{
    const SweepResult& result = data.rmt_perturbative();
    bool pass = true;
    std::string detail;
    for (const SweepPoint& point : result.points) {
        const MeasureStat& stat = point.measures.at("lambda1");
        const double target = 1.0 - std::sqrt(std::numbers::pi * point.lambda);
        const double dev = std::abs(stat.mean - target);
        // Tolerance: three ensemble standard errors, with an absolute floor
        // of 0.002 for when the ensemble scatter is tiny.
        const double allowed = std::max(3.0 * stat.stderr_of_mean, 0.002);
        pass = pass && dev <= allowed;
        detail += fmt("%slambda=%.0e dev %.2e (allowed %.2e)", detail.empty() ? "" : ", ",
                      point.lambda, dev, allowed);
    }
    return {pass, detail};
}

Outcome c5_universal_u_distribution(Pipelines& data)
{
    const UDistResult& rmt = data.udist_rmt();
    const UDistResult& kr = data.udist_kr();
    const double tv_models = tv_between(rmt.pooled, kr.pooled);
    const bool pass = rmt.total_samples >= 100000 && rmt.tv_to_theory < 0.05 &&
                      tv_models < 0.05;
    return {pass, fmt("%lld pooled samples (need >= 100000); TV to universal density %.4f, "
                      "rotor-vs-ensemble TV %.4f (limits 0.05)",
                      rmt.total_samples, rmt.tv_to_theory, tv_models)};
}

Outcome c6_ipr_purity_identity(Pipelines&)
{
    bool pass = true;
    double worst_pull = 0.0;
    int checked = 0;
    for (const int n : {4, 6}) {
        for (int i = 0; i < 20; ++i) {
            RandomStream state_stream(613, static_cast<std::uint64_t>(100 * n + i));
            const Eigen::VectorXcd state = sample_haar_state(n * n, state_stream);
            const double p2 = moment(schmidt_spectrum(state, n), 2);
            const double target = purity_to_ipr(p2, n);
            const RandomStream mc_stream(611, static_cast<std::uint64_t>(100 * n + i));
            const auto [mean, se] =
                ipr_product_haar_average(state, n, 20000, mc_stream, ExecPolicy::Parallel);
            const double pull = std::abs(mean - target) / se;
            worst_pull = std::max(worst_pull, pull);
            pass = pass && pull <= 3.0;
            ++checked;
        }
    }
    return {pass, fmt("%d states (n = 4 and 6), 20000 Haar product bases each; worst "
                      "deviation %.2f standard errors (limit 3)",
                      checked, worst_pull)};
}

Outcome c7_global_haar_averages(Pipelines&)
{
    const int n = 4, dim = 16, samples = 10000;
    RandomStream stream(617, 0);
    std::vector<double> purities, iprs;
    purities.reserve(samples);
    iprs.reserve(samples);
    const IprBasis computational = IprBasis::computational();
    for (int i = 0; i < samples; ++i) {
        const Eigen::VectorXcd state = sample_haar_state(dim, stream);
        purities.push_back(moment(schmidt_spectrum(state, n), 2));
        iprs.push_back(ipr(state, computational));
    }
    const auto [purity_mean, purity_se] = mean_and_stderr(purities);
    const auto [ipr_mean, ipr_se] = mean_and_stderr(iprs);
    const double purity_pull = std::abs(purity_mean - 8.0 / 17.0) / purity_se;
    const double ipr_pull = std::abs(ipr_mean - 2.0 / 17.0) / ipr_se;
    return {purity_pull <= 3.0 && ipr_pull <= 3.0,
            fmt("mean purity %.5f vs 8/17 (%.2f sigma), mean IPR %.5f vs 2/17 (%.2f sigma); "
                "limit 3 sigma over %d states",
                purity_mean, purity_pull, ipr_mean, ipr_pull, samples)};
}

Outcome c8_basis_resolved_localization(Pipelines& data)
{
    const IprRatioResult combined = combine_ipr_ratio(data.rmt_main(), data.kr_main());
    int momentum_outside = 0, position_outside_intermediate = 0;
    double worst_momentum_pull = 0.0;
    for (const IprRatioPoint& point : combined.points) {
        if (!point.momentum_within_band)
            ++momentum_outside;
        if (point.rmt_ratio_sigma > 0.0)
            worst_momentum_pull =
                std::max(worst_momentum_pull,
                         std::abs(point.kr_ratio_momentum - 1.0) / point.rmt_ratio_sigma);
        const bool intermediate = point.lambda > 1e-3 && point.lambda < 1.0;
        if (intermediate && !point.position_within_band)
            ++position_outside_intermediate;
    }
    const bool pass = momentum_outside == 0 && position_outside_intermediate > 0;
    return {pass, fmt("momentum-basis ratio outside the 3-sigma ensemble band at %d/%zu "
                      "points (worst pull %.2f sigma); position basis outside at %d "
                      "intermediate couplings (need >= 1)",
                      momentum_outside, combined.points.size(), worst_momentum_pull,
                      position_outside_intermediate)};
}

Outcome c9_ode_equals_closed_form(Pipelines&)
{
    double worst = 0.0;
    for (const int k : {2, 3, 4}) {
        const theory::OdeCurve curve = theory::integrate_moment_ode(k, 50, 4.0, 4000);
        for (std::size_t i = 0; i < curve.sqrt_lambda.size(); ++i) {
            const double x = curve.sqrt_lambda[i];
            const double closed = 1.0 - (k - 1) * theory::entropy_transition(k, 50, x * x);
            worst = std::max(worst, std::abs(curve.moment[i] - closed));
        }
    }
    return {worst < 1e-8,
            fmt("max |ODE - closed form| = %.2e over sqrt(lambda) in [0,4], k = 2,3,4 "
                "(limit 1e-8)",
                worst)};
}

Outcome c10_property_battery(Pipelines&)
{
    std::vector<std::string> failures;

    // Unitarity of both constructions.
    {
        ModelSpec rmt;
        rmt.kind = ModelKind::Rmt;
        rmt.n = 8;
        rmt.coupling = 0.5;
        RandomStream stream(701, 0);
        const FloquetOperator op = build_rmt_floquet(rmt, stream);
        if (unitarity_error(op.full) > 1e-10 || unitarity_error(op.u1) > 1e-10 ||
            unitarity_error(op.u2) > 1e-10)
            failures.push_back("random-ensemble operator unitarity");

        ModelSpec kr;
        kr.kind = ModelKind::KickedRotor;
        kr.n = 8;
        kr.coupling = 0.3;
        const FloquetOperator rotor = build_kr_floquet(kr);
        if (unitarity_error(rotor.full) > 1e-10)
            failures.push_back("rotor-pair operator unitarity");
    }

    // Schmidt normalization on random states.
    {
        RandomStream stream(703, 0);
        for (int i = 0; i < 30; ++i) {
            const SchmidtSpectrum sp = schmidt_spectrum(sample_haar_state(64, stream), 8);
            if (std::abs(sp.weights.sum() - 1.0) > 1e-12 || sp.weights.minCoeff() < -1e-15) {
                failures.push_back("Schmidt weight normalization");
                break;
            }
            for (int j = 1; j < sp.weights.size(); ++j)
                if (sp.weights(j) > sp.weights(j - 1) + 1e-14) {
                    failures.push_back("Schmidt weight ordering");
                    break;
                }
        }
    }

    // Entropies are invariant under local (product) unitaries.
    {
        const int n = 6;
        RandomStream stream(707, 0);
        const Eigen::VectorXcd state = sample_haar_state(n * n, stream);
        const Eigen::MatrixXcd u1 = sample_cue(n, stream);
        const Eigen::MatrixXcd u2 = sample_cue(n, stream);
        Eigen::VectorXcd rotated(n * n);
        Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            psi(state.data(), n, n);
        Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
            out(rotated.data(), n, n);
        out = u1 * psi * u2.transpose();
        const SchmidtSpectrum before = schmidt_spectrum(state, n);
        const SchmidtSpectrum after = schmidt_spectrum(rotated, n);
        for (const int k : {1, 2, 3, 4})
            if (std::abs(entropy(before, k) - entropy(after, k)) > 1e-10)
                failures.push_back(fmt("local-unitary invariance of S%d", k));
    }

    // Bitwise determinism across thread counts and execution policies.
    {
        SweepConfig config;
        config.model.kind = ModelKind::Rmt;
        config.model.n = 6;
        config.lambda_grid = {0.3};
        config.realizations = 2;
        config.k_set = {1, 2};
        config.master_seed = 709;
        config.threads = 1;
        const std::string csv1 = sweep_csv(run_sweep(config));
        config.threads = 2;
        if (sweep_csv(run_sweep(config)) != csv1)
            failures.push_back("thread-count determinism of the sweep");

        RandomStream stream(711, 0);
        Eigen::MatrixXcd states(36, 8);
        for (int c = 0; c < states.cols(); ++c)
            states.col(c) = sample_haar_state(36, stream);
        const std::vector<int> k_set{1, 2, 3};
        const std::vector<IprBasis> bases{IprBasis::computational()};
        const auto serial = measure_states(states, 6, k_set, bases, ExecPolicy::Serial);
        const auto parallel = measure_states(states, 6, k_set, bases, ExecPolicy::Parallel);
        for (std::size_t i = 0; i < serial.size(); ++i)
            if (serial[i].entropies != parallel[i].entropies ||
                serial[i].iprs != parallel[i].iprs)
                failures.push_back("execution-policy equivalence of state measurements");
    }

    // Two-level mixing weights vs an explicit two-term superposition, and the
    // recursive-mixing purity bookkeeping identity.
    {
        const TwoLevelWeights w = two_level_weights(0.25, 1.5, 0.5);  // x = 6
        if (std::abs(w.lambda1 + w.lambda2 - 1.0) > 1e-15)
            failures.push_back("two-level weight normalization");
        Eigen::VectorXcd two_term = Eigen::VectorXcd::Zero(16);
        two_term(0) = std::sqrt(w.lambda1);   // |0>|0>
        two_term(5) = std::sqrt(w.lambda2);   // |1>|1>
        const SchmidtSpectrum sp = schmidt_spectrum(two_term, 4);
        if (std::abs(sp.weights(0) - w.lambda1) > 1e-14 ||
            std::abs(sp.weights(1) - w.lambda2) > 1e-14)
            failures.push_back("two-level weights vs explicit Schmidt spectrum");

        RandomStream stream(713, 0);
        for (int i = 0; i < 100; ++i) {
            const TwoLevelWeights a =
                two_level_weights(0.1, stream.exponential(1.0), 0.1 + stream.uniform01());
            const TwoLevelWeights b =
                two_level_weights(0.2, stream.exponential(1.0), 0.1 + stream.uniform01());
            const double p2 = a.lambda1 * a.lambda1 + a.lambda2 * a.lambda2;
            const double p2_mixed = b.lambda1 * b.lambda1 * a.lambda1 * a.lambda1 +
                                    b.lambda1 * b.lambda1 * a.lambda2 * a.lambda2 +
                                    b.lambda2 * b.lambda2;
            const double lhs = p2_mixed - p2;
            const double rhs =
                -(1.0 - b.lambda1 * b.lambda1 - b.lambda2 * b.lambda2) * p2 +
                b.lambda2 * b.lambda2 * (1.0 - p2);
            if (std::abs(lhs - rhs) > 1e-15) {
                failures.push_back("recursive-mixing purity identity");
                break;
            }
        }
    }

    if (failures.empty())
        return {true, "operator unitarity, Schmidt normalization, local-unitary invariance, "
                      "thread/policy determinism, two-level and recursive-mixing identities"};
    std::string detail = "failed:";
    for (const std::string& f : failures)
        detail += " " + f + ";";
    return {false, detail};
}

// ---------------------------------------------------------------------------

struct Criterion {
    std::string id;
    std::string title;
    Outcome (*run)(Pipelines&);
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list{
        {"c1", "entropy transition, random ensemble", c1_entropy_transition},
        {"c2", "entropy transition, coupled kicked rotors", c2_rotor_universality},
        {"c3", "entropy saturation at strong coupling", c3_saturation},
        {"c4", "largest Schmidt weight law", c4_largest_weight_law},
        {"c5", "universal rescaled second-weight distribution", c5_universal_u_distribution},
        {"c6", "IPR-purity identity over Haar product bases", c6_ipr_purity_identity},
        {"c7", "global Haar averages of purity and IPR", c7_global_haar_averages},
        {"c8", "basis-resolved localization of the rotor pair", c8_basis_resolved_localization},
        {"c9", "moment ODE equals closed transition curve", c9_ode_equals_closed_form},
        {"c10", "property battery", c10_property_battery},
    };
    return list;
}

} // namespace

int main(int argc, char** argv)
{
    fs::path data_dir = "acceptance_data";
    std::vector<std::string> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--data" && i + 1 < argc) {
            data_dir = argv[++i];
        } else if (arg == "--list") {
            for (const Criterion& c : criteria())
                std::cout << c.id << "  " << c.title << "\n";
            return 0;
        } else if (!arg.empty() && arg[0] == 'c') {
            selected.push_back(arg);
        } else {
            std::cerr << "usage: acceptance_tests [--data DIR] [--list] [c1 c2 ...]\n";
            return 2;
        }
    }

    std::error_code ec;
    fs::create_directories(data_dir, ec);
    PipelineCache cache(data_dir);
    Pipelines data(cache);

    auto is_selected = [&](const std::string& id) {
        return selected.empty() || std::find(selected.begin(), selected.end(), id) !=
                                       selected.end();
    };

    // When the full suite runs, materialize shared pipelines cheapest-first.
    if (selected.empty())
        data.prefetch();

    bool all_pass = true;
    for (const Criterion& criterion : criteria()) {
        if (!is_selected(criterion.id))
            continue;
        Outcome outcome;
        try {
            outcome = criterion.run(data);
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        all_pass = all_pass && outcome.pass;
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << criterion.id << " "
                  << criterion.title << " -- " << outcome.detail << std::endl;
    }
    return all_pass ? 0 : 1;
}
