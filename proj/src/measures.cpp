#include "entrans/measures.hpp"

#include <cmath>

#include "entrans/errors.hpp"
#include "entrans/haar.hpp"
#include "entrans/stats.hpp"

namespace entrans {

double moment(const SchmidtSpectrum& spectrum, int k)
{
    if (k < 1)
        throw config_error("moment: order must be >= 1");
    if (k == 1)
        return spectrum.weights.sum();
    double p = 0.0;
    for (const double w : spectrum.weights)
        p += std::pow(w, k);
    return p;
}

double hct_entropy(const SchmidtSpectrum& spectrum, int k)
{
    if (k < 2)
        throw config_error("hct_entropy: order must be >= 2 (order 1 is the "
                           "von Neumann limit)");
    return (1.0 - moment(spectrum, k)) / (k - 1);
}

double von_neumann_entropy(const SchmidtSpectrum& spectrum)
{
    double s = 0.0;
    for (const double w : spectrum.weights)
        if (w > 0.0)
            s -= w * std::log(w);
    return s;
}

double entropy(const SchmidtSpectrum& spectrum, int k)
{
    if (k < 1)
        throw config_error("entropy: order must be >= 1");
    return k == 1 ? von_neumann_entropy(spectrum) : hct_entropy(spectrum, k);
}

IprBasis IprBasis::computational()
{
    return IprBasis{};
}

IprBasis IprBasis::product(std::string label, Eigen::MatrixXcd b1, Eigen::MatrixXcd b2)
{
    IprBasis basis;
    basis.kind = Kind::Product;
    basis.label = std::move(label);
    basis.b1 = std::move(b1);
    basis.b2 = std::move(b2);
    return basis;
}

double ipr(const Eigen::VectorXcd& state, const IprBasis& basis)
{
    if (basis.kind == IprBasis::Kind::Computational)
        return state.array().abs2().square().sum();
    if (basis.b1.size() == 0 || basis.b2.size() == 0)
        throw config_error("ipr: product basis '" + basis.label + "' has no factor matrices");
    const Eigen::VectorXcd transformed = product_basis_transform(state, basis.b1, basis.b2);
    return transformed.array().abs2().square().sum();
}

double purity_to_ipr(double p2, int n)
{
    if (n < 1)
        throw config_error("purity_to_ipr: dimension must be >= 1");
    if (p2 < 1.0 / n - 1e-12 || p2 > 1.0 + 1e-12)
        throw config_error("purity_to_ipr: purity " + std::to_string(p2) +
                           " outside [1/n, 1]");
    const double np1 = n + 1.0;
    return 2.0 * (1.0 + p2) / (np1 * np1);
}

double rescaled_ipr(double ipr_value, int n)
{
    if (n < 1)
        throw config_error("rescaled_ipr: dimension must be >= 1");
    if (!(ipr_value >= 0.0))
        throw config_error("rescaled_ipr: ipr must be >= 0");
    const double np1 = n + 1.0;
    return 0.5 * np1 * np1 * ipr_value;
}

std::pair<double, double> ipr_product_haar_average(const Eigen::VectorXcd& state, int n,
                                                  int samples, const RandomStream& stream,
                                                  ExecPolicy policy)
{
    if (samples < 2)
        throw config_error("ipr_product_haar_average: need at least 2 samples");
    if (state.size() != static_cast<Eigen::Index>(n) * n)
        throw config_error("ipr_product_haar_average: state length must be n^2");

    // Each sample consumes exactly two CUE draws (2 n^2 stream draws apiece),
    // so sample s can start at a known stream offset regardless of scheduling.
    const std::uint64_t per_sample = 4ull * n * n;
    const std::uint64_t base = stream.draw_count();
    std::vector<double> values(samples);

    auto body = [&](int s) {
        RandomStream local = stream.at_draw(base + s * per_sample);
        const Eigen::MatrixXcd v1 = sample_cue(n, local);
        const Eigen::MatrixXcd v2 = sample_cue(n, local);
        values[s] = product_basis_transform(state, v1, v2).array().abs2().square().sum();
    };
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
        for (int s = 0; s < samples; ++s)
            body(s);
    } else {
        for (int s = 0; s < samples; ++s)
            body(s);
    }
    return mean_and_stderr(values);
}

MeasureRecord measure_state(const Eigen::VectorXcd& state, int n, std::span<const int> k_set,
                            std::span<const IprBasis> bases, int state_index)
{
    const SchmidtSpectrum spectrum = schmidt_spectrum(state, n);

    MeasureRecord record;
    record.state_index = state_index;
    record.k_set.assign(k_set.begin(), k_set.end());
    record.entropies.reserve(k_set.size());
    record.moments.reserve(k_set.size());
    for (const int k : k_set) {
        record.entropies.push_back(entropy(spectrum, k));
        record.moments.push_back(moment(spectrum, k));
    }
    record.lambda1 = spectrum.weights(0);
    record.lambda2 = n >= 2 ? spectrum.weights(1) : 0.0;
    record.basis_labels.reserve(bases.size());
    record.iprs.reserve(bases.size());
    for (const IprBasis& basis : bases) {
        record.basis_labels.push_back(basis.label);
        record.iprs.push_back(ipr(state, basis));
    }
    return record;
}

} // namespace entrans
