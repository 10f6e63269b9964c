#include "entrans/kernels.hpp"

#include "entrans/errors.hpp"

extern "C" void openblas_set_num_threads(int);

namespace entrans {

namespace {

void check_batch(const Eigen::MatrixXcd& states, int n)
{
    if (n < 2)
        throw config_error("state batch: subsystem dimension must be >= 2");
    if (states.rows() != static_cast<Eigen::Index>(n) * n)
        throw config_error("state batch: column length must be n^2");
    if (states.cols() < 1)
        throw config_error("state batch: empty batch");
}

} // namespace

std::vector<SchmidtSpectrum> schmidt_batch(const Eigen::MatrixXcd& states, int n,
                                           ExecPolicy policy)
{
    check_batch(states, n);
    openblas_set_num_threads(1);  // keep BLAS serial inside the OpenMP region
    const int count = static_cast<int>(states.cols());
    std::vector<SchmidtSpectrum> spectra(count);
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < count; ++j)
            spectra[j] = schmidt_spectrum(states.col(j), n);
    } else {
        for (int j = 0; j < count; ++j)
            spectra[j] = schmidt_spectrum(states.col(j), n);
    }
    return spectra;
}

std::vector<MeasureRecord> measure_states(const Eigen::MatrixXcd& states, int n,
                                          std::span<const int> k_set,
                                          std::span<const IprBasis> bases, ExecPolicy policy)
{
    check_batch(states, n);
    openblas_set_num_threads(1);
    const int count = static_cast<int>(states.cols());
    std::vector<MeasureRecord> records(count);
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < count; ++j)
            records[j] = measure_state(states.col(j), n, k_set, bases, j);
    } else {
        for (int j = 0; j < count; ++j)
            records[j] = measure_state(states.col(j), n, k_set, bases, j);
    }
    return records;
}

} // namespace entrans
