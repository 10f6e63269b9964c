#pragma once

#include <span>
#include <utility>
#include <vector>

namespace entrans {

// (sample mean, standard error of the mean). Fixed summation order so results
// are reproducible bit-for-bit; requires at least one value (two for a
// nonzero standard error).
std::pair<double, double> mean_and_stderr(std::span<const double> values);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<long long> counts;  // uniform bins on [lo, hi)
    long long underflow = 0;
    long long overflow = 0;

    long long total() const;
    double bin_width() const;
    // Empirical cell probabilities: one entry per bin plus a trailing
    // overflow cell (mass at values >= hi), normalized by the full total.
    // Underflow is counted but not part of the cell set, so the cells sum
    // to 1 only when no value fell below lo (always the case for the
    // nonnegative data this is used on).
    std::vector<double> cell_probabilities() const;
    // Midpoints of the regular bins.
    std::vector<double> bin_centers() const;
};

Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi);

// Total variation distance 1/2 sum |p - q| between two discrete
// distributions over the same cells.
double tv_distance(std::span<const double> p, std::span<const double> q);

// Pearson chi-squared p-value against the uniform distribution over cells.
double chi2_uniform_pvalue(std::span<const long long> counts);

// Two-sample chi-squared p-value that both count vectors draw from the same
// (unspecified) distribution; cells empty in both samples are dropped.
double chi2_two_sample_pvalue(std::span<const long long> a, std::span<const long long> b);

} // namespace entrans
